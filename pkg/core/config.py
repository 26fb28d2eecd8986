from __future__ import annotations

import os

from dotenv import load_dotenv

load_dotenv()

APP_NAME = "holokit"
APP_VERSION = "v0.4.0"

# ----------------------------
# Engine defaults (overridable through the environment / .env)
# ----------------------------
DEFAULT_MAX_ORDER = int(os.getenv("HOLOKIT_MAX_ORDER", "6"))
DEFAULT_WINDOW = int(os.getenv("HOLOKIT_WINDOW", "2"))
DEFAULT_SEED = int(os.getenv("HOLOKIT_SEED", "20240607"))
DEFAULT_RETRIES = int(os.getenv("HOLOKIT_RETRIES", "5"))
COEFF_BOUND = int(os.getenv("HOLOKIT_COEFF_BOUND", "97"))

LOG_LEVEL = os.getenv("HOLOKIT_LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("HOLOKIT_LOG_FILE", "holokit.log")

# ----------------------------
# Scalar fields
# ----------------------------
FIELD_QQ = "QQ"
FIELD_QQ_SQRT3 = "QQ<sqrt(3)>"

# ----------------------------
# Data files
# ----------------------------
DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data")
LIEGROUP_FILES = {
    "g1": os.path.join(DATA_DIR, "liegroup_g1.json"),
    "g2": os.path.join(DATA_DIR, "liegroup_g2.json"),
    "abelian": os.path.join(DATA_DIR, "liegroup_abelian.json"),
}
DEFAULT_SWEEP_FILE = os.path.join(DATA_DIR, "sweep_default.json")

# Exit codes of the CLI
EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK_FAILED = 2
