from engine.runners.mart.adversarial import AdversarialRunner
from engine.runners.mart.subordination import SubordinationRunner

__all__ = ["AdversarialRunner", "SubordinationRunner"]
