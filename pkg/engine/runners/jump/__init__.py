from engine.runners.jump.parabolic import ParabolicRunner

__all__ = ["ParabolicRunner"]
