from .experiment import ExperimentConfig, parse_experiment
from .settings import Settings, get_settings


__all__ = ["ExperimentConfig", "Settings", "get_settings", "parse_experiment"]
