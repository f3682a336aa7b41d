from engine.runners.burkholder.check import BurkholderCheckRunner

__all__ = ["BurkholderCheckRunner"]
