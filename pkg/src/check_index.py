import sys
from services.checks import invariant_checks
from utilities.check_summary import CheckSummary


class Main:
    """Purpose of this class is to run every invariant check suite and print the
    results per module.
    """

    def __init__(self):
        self.summary = CheckSummary(invariant_checks.run_suite("all"))

    def print_results(self):
        print("Results from invariant checks: how many checks pass in each module?")
        print(self.summary.module_frequencies())
        failed = [result.name for result in self.summary.results if not result.passed]
        if failed:
            print(f"failed checks: {', '.join(failed)}")


if __name__ == "__main__":
    check_run = Main()
    check_run.print_results()
    sys.exit(0 if check_run.summary.all_passed else 1)
