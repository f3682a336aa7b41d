from engine.runners.wiener.checks import OneDimRunner, OrthogonalPairRunner, SelfAdjointRunner

__all__ = ["OneDimRunner", "OrthogonalPairRunner", "SelfAdjointRunner"]
