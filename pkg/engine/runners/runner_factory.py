from abc import ABC
from typing import Optional, Type, Union

from engine.base_runner import BaseRunner, ExperimentReport
from engine.runners.burkholder import BurkholderCheckRunner
from engine.runners.fourier import HilbertRatioRunner, OpNormRunner, SymbolEvalRunner
from engine.runners.jump import ParabolicRunner
from engine.runners.mart import AdversarialRunner, SubordinationRunner
from engine.runners.wiener import OneDimRunner, OrthogonalPairRunner, SelfAdjointRunner
from lab.experiment_config import ExperimentConfig

RUNNERS = {
    "burkholder-check": BurkholderCheckRunner,
    "mart-subordination": SubordinationRunner,
    "mart-adversarial": AdversarialRunner,
    "jump-parabolic": ParabolicRunner,
    "symbol-eval": SymbolEvalRunner,
    "opnorm-search": OpNormRunner,
    "hilbert-ratio": HilbertRatioRunner,
    "wiener-orthogonal": OrthogonalPairRunner,
    "wiener-selfadjoint": SelfAdjointRunner,
    "wiener-onedim": OneDimRunner,
}


class RunnerFactory(ABC):
    def __init__(self, seed: Optional[int] = None, paths: Optional[int] = None, output: Optional[str] = None):
        self.seed = seed
        self.paths = paths
        self.output = output

    def _create_config(self, experiment: Union[dict, ExperimentConfig]) -> ExperimentConfig:
        if not isinstance(experiment, ExperimentConfig):
            experiment = ExperimentConfig.from_dict(experiment)
        return experiment.with_overrides(seed=self.seed, paths=self.paths, output=self.output)

    def _create_runner(self, config: ExperimentConfig) -> BaseRunner:
        runner_class: Type[BaseRunner] = RUNNERS[config.kind]
        return runner_class(config)

    def build_runner(self, experiment: Union[dict, ExperimentConfig]) -> BaseRunner:
        return self._create_runner(self._create_config(experiment))


def run_quietly(config: ExperimentConfig) -> ExperimentReport:
    """Run without saving or stage lines; the sweep worker."""
    return RunnerFactory().build_runner(config).run_experiment(save=False, verbose=False)
