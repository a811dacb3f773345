from ..series import Ledger, emit_series
from .audits import AUDITS, AuditResult, run_audits
from .config import ScenarioConfig, load_config, validate_config
from .runner import RunManifest, output_root, run_scenario

__all__ = [
    "ScenarioConfig", "validate_config", "load_config",
    "RunManifest", "run_scenario", "output_root",
    "AuditResult", "AUDITS", "run_audits",
    "Ledger", "emit_series",
]
