import glob
import json
import os
from pathlib import Path
from typing import Dict, List, Union

from core.errors import ConfigError
from lab import CONFIGURATIONS_DIR


def read_config_file(path: Union[str, Path]) -> List[dict]:
    """Entries of one configuration file; a single object counts as a list of one."""
    try:
        with open(path, "r") as fd:
            configs = json.load(fd)
    except FileNotFoundError:
        raise ConfigError("config", f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError("config", f"{path} is not valid JSON: {e}")

    if isinstance(configs, dict):
        configs = [configs]
    if not isinstance(configs, list) or not all(isinstance(c, dict) for c in configs):
        raise ConfigError("config", f"{path} must hold an object or a list of objects")
    return configs


def read_experiment_configs(configurations_dir: Union[str, Path] = CONFIGURATIONS_DIR) -> Dict[str, dict]:
    all_configs = {}
    config_files = sorted(glob.glob(os.path.join(configurations_dir, "*.json")))
    for config_file in config_files:
        for config in read_config_file(config_file):
            if "name" not in config:
                raise ConfigError("name", f"unnamed experiment in {config_file}")
            all_configs[config["name"]] = config

    return all_configs
