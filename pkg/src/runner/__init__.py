"""
Batch runner: JSON run descriptions in, JSON reports out.
"""

from .commands import run
from .config_manager import ConfigManager
from .corpus import CorpusSize, enumerate_instances, generate
from .loader import build_space, fingerprint, parse_run_spec
from .schemas import EngineSettings, Report, RunSpec, Verdict

__all__ = [
    "ConfigManager",
    "CorpusSize",
    "EngineSettings",
    "Report",
    "RunSpec",
    "Verdict",
    "build_space",
    "enumerate_instances",
    "fingerprint",
    "generate",
    "parse_run_spec",
    "run",
]
