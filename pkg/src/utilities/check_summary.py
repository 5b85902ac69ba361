import json
import numpy as np
import pandas as pd


class CheckSummary:
    """Class collects invariant check results into tables and the JSON report.
    """

    def __init__(self, results):
        self.results = list(results)

    def result_table(self):
        return pd.DataFrame([{"name": result.name, "module": result.module, "tolerance": result.tolerance,
                              "achieved": result.achieved, "passed": result.passed}
                             for result in self.results],
                            columns=["name", "module", "tolerance", "achieved", "passed"])

    def module_frequencies(self):
        """Method counts the passed checks per module.

        Returns:
            DataFrame: Columns Module, Passed_number, Total_number and Perc_Passed.
        """

        table = self.result_table()
        summary = table.groupby("module", sort=False).agg({"passed": ["sum", "count"]}).reset_index()
        summary.columns = ["Module", "Passed_number", "Total_number"]
        summary["Perc_Passed"] = (summary["Passed_number"].astype(float)
                                  / summary["Total_number"].astype(float)) * 100
        return summary

    @property
    def all_passed(self):
        return all(result.passed for result in self.results)

    def report(self):
        """Method returns the report as a JSON string. Infinite achieved errors are
        written as null.
        """

        checks = [{"name": result.name, "module": result.module, "tolerance": result.tolerance,
                   "achieved": result.achieved if np.isfinite(result.achieved) else None,
                   "passed": result.passed}
                  for result in self.results]
        return json.dumps({"passed": self.all_passed, "checks": checks}, indent=2, sort_keys=True) + "\n"
