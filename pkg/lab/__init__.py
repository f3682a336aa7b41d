import os
from pathlib import Path

# experiments/ and results/ sit next to the lab package
PROJECT_DIR = Path(__file__).resolve().parent.parent
CONFIGURATIONS_DIR = PROJECT_DIR / "experiments" / "configurations"
RESULTS_DIR = Path(os.getenv("LAB_RESULTS_DIR", PROJECT_DIR / "results"))
