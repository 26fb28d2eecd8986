# handlers/health.py
from __future__ import annotations

import importlib
import os
from typing import Dict

from core.config import APP_VERSION, DEFAULT_MAX_ORDER, DEFAULT_SEED, DEFAULT_SWEEP_FILE, DEFAULT_WINDOW, LIEGROUP_FILES, LOG_FILE, LOG_LEVEL

PACKAGES = ("sympy", "numpy", "pydantic", "orjson", "typer", "rich", "dotenv")


def run_health_check() -> Dict[str, str]:
    health = {
        "version": APP_VERSION,
        "log_level": LOG_LEVEL,
        "log_file": LOG_FILE or "(none)",
        "defaults": f"max_order={DEFAULT_MAX_ORDER} window={DEFAULT_WINDOW} seed={DEFAULT_SEED}",
    }

    for pkg in PACKAGES:
        try:
            mod = importlib.import_module(pkg)
            health[pkg] = f"✓ Installed ({getattr(mod, '__version__', 'unknown version')})"
        except ImportError:
            health[pkg] = "❌ Not installed"

    for name, path in sorted(LIEGROUP_FILES.items()):
        health[f"data:{name}"] = "✓ Found" if os.path.exists(path) else f"❌ Missing ({path})"
    health["data:sweep"] = "✓ Found" if os.path.exists(DEFAULT_SWEEP_FILE) else f"❌ Missing ({DEFAULT_SWEEP_FILE})"

    try:
        from core.catalog import build_algebra, FamilySpec
        alg = build_algebra(FamilySpec("n0-hol2", n=0))
        health["engine"] = f"✓ Working (n0-hol2 has dim {alg.dim})"
    except Exception as e:
        health["engine"] = f"❌ Error: {str(e)[:80]}"

    return health


def healthy(health: Dict[str, str]) -> bool:
    return not any(v.startswith("❌") for v in health.values())
