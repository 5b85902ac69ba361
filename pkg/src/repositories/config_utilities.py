from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional
import copy
import json


def get_defaults_file_location():
    """Function returns the location of the figure default parameter file.
    """

    script_location = Path(__file__).absolute().parent.parent.parent
    return script_location/"data"/"figure_defaults.json"


def parse_value(text):
    """Function parses a command line parameter value as int, float, a comma
    separated list of floats or, failing those, a string.
    """

    for convert in (int, float):
        try:
            return convert(text)
        except ValueError:
            pass
    if "," in text:
        try:
            return [float(item) for item in text.split(",")]
        except ValueError:
            pass
    return text


def parse_parameter(text):
    """Function splits a key=value override.

    Raises:
        ValueError: The text has no '='.
    """

    key, separator, value = text.partition("=")
    if not separator or not key:
        raise ValueError(f"parameter override must look like key=value, got '{text}'")
    return key.strip(), parse_value(value.strip())


class FigureDefaults:
    """Class holds the default parameter sets of the figures, phase sweeps,
    spectra and reconstructions, read from the figure default file.
    """

    def __init__(self, file_name=None):
        self.file_name = file_name or get_defaults_file_location()
        with open(self.file_name, "r", encoding="utf-8") as defaults_file:
            self.defaults = json.load(defaults_file)

    def keys(self, section):
        return list(self.defaults[section].keys())

    def entry(self, section, key):
        """Method returns the whole default entry: parameters, units and reference.

        Raises:
            KeyError: Unknown section or key.
        """

        return self.defaults[section][str(key)]

    def resolve(self, section, key, overrides=None):
        """Method returns the default parameters of an entry with overrides applied.

        Args:
            section (str): figures, phase, spectrum or reconstruct.
            key: Entry key, e.g. the figure id.
            overrides (dict, optional): Values replacing the defaults.

        Returns:
            dict: Resolved parameters.
        """

        parameters = copy.deepcopy(self.entry(section, key)["parameters"])
        parameters.update(overrides or {})
        return parameters


@dataclass(frozen=True)
class RunConfig:
    """One fully described command line run.
    """

    command: str
    target: Optional[str] = None
    parameters: dict = field(default_factory=dict)
    output: Optional[str] = None
    output_format: str = "csv"


def load_run_config(path):
    """Function reads a run configuration written by save_run_config.
    """

    with open(path, "r", encoding="utf-8") as config_file:
        content = json.load(config_file)
    target = content.get("target")
    return RunConfig(command=content["command"],
                     target=None if target is None else str(target),
                     parameters=dict(content.get("parameters", {})),
                     output=content.get("output"),
                     output_format=content.get("format", "csv"))


def save_run_config(config, path):
    content = {"command": config.command, "target": config.target, "parameters": config.parameters,
               "output": config.output, "format": config.output_format}
    with open(path, "w", encoding="utf-8") as config_file:
        config_file.write(json.dumps(content, indent=2, sort_keys=True) + "\n")


figure_defaults = FigureDefaults()
