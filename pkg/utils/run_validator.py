"""
Validation of run configurations before any computation starts
"""
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from config.system_config import SystemConfig


class ValidationSeverity(Enum):
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


@dataclass
class ValidationResult:
    is_valid: bool
    severity: ValidationSeverity
    field_name: str
    message: str
    expected_value: Any = None
    actual_value: Any = None
    suggestion: str = ""

    def __str__(self):
        text = f"{self.field_name}: {self.message}"
        if self.expected_value is not None:
            text += f" (expected {self.expected_value}, got {self.actual_value})"
        if self.suggestion:
            text += f"; {self.suggestion}"
        return text


FAMILY_NAMES = ("sl2-z2", "sl2-z2xz2", "sl2-z", "sln")
METHODS = ("brute", "formula", "both")
FORMATS = ("json", "csv")


@dataclass
class RunConfig:
    """One CLI run. output None means standard output."""
    command: str
    family: Optional[str] = None
    k: Optional[int] = None
    m_max: Optional[int] = None
    method: str = "brute"
    n: Optional[int] = None
    output: Optional[str] = None
    format: str = "json"
    fix_first: bool = SystemConfig.FIX_FIRST_LETTER
    word_cap: int = SystemConfig.WORD_CAP
    workers: int = SystemConfig.WORKERS
    timings: bool = False
    extra: Dict[str, Any] = field(default_factory=dict)

    def echo(self) -> Dict[str, Any]:
        """Config section of a report: set fields only, output location excluded."""
        data = asdict(self)
        data.pop("output")
        extra = data.pop("extra")
        data.update(extra)
        return {key: value for key, value in data.items() if value is not None}


class RunConfigValidator:
    """Checks a RunConfig against the configured ranges"""

    def __init__(self, settings=SystemConfig):
        self.settings = settings
        self.valid_ranges = dict(settings.LIMITS)
        self.slow_brute_force = dict(settings.SLOW_BRUTE_FORCE)

    def validate(self, cfg: RunConfig) -> List[ValidationResult]:
        results = []
        if cfg.family is not None:
            results.extend(self._validate_family(cfg))
        for name in ("k", "m_max", "n"):
            value = getattr(cfg, name)
            if value is not None:
                results.extend(self._validate_range(name, value))
        results.extend(self._validate_choice("method", cfg.method, METHODS))
        results.extend(self._validate_choice("format", cfg.format, FORMATS))
        results.extend(self._validate_positive("word_cap", cfg.word_cap))
        results.extend(self._validate_positive("workers", cfg.workers))
        results.extend(self._validate_method_logic(cfg))
        return results

    def _validate_family(self, cfg: RunConfig) -> List[ValidationResult]:
        results = []
        if cfg.family not in FAMILY_NAMES:
            results.append(ValidationResult(
                is_valid=False,
                severity=ValidationSeverity.ERROR,
                field_name="family",
                message="unknown grading family",
                expected_value=", ".join(FAMILY_NAMES),
                actual_value=cfg.family,
            ))
        elif cfg.family == "sln" and cfg.n is None:
            results.append(ValidationResult(
                is_valid=False,
                severity=ValidationSeverity.ERROR,
                field_name="n",
                message="the sl_n model needs a matrix size",
                suggestion="pass --n",
            ))
        return results

    def _validate_range(self, name: str, value: Any) -> List[ValidationResult]:
        if not isinstance(value, int) or isinstance(value, bool):
            return [ValidationResult(
                is_valid=False,
                severity=ValidationSeverity.ERROR,
                field_name=name,
                message=f"{name} must be an integer",
                expected_value="integer",
                actual_value=type(value).__name__,
            )]
        low, high = self.valid_ranges[name]
        if not low <= value <= high:
            return [ValidationResult(
                is_valid=False,
                severity=ValidationSeverity.ERROR,
                field_name=name,
                message=f"{name} outside the supported range",
                expected_value=f"{low} to {high}",
                actual_value=value,
            )]
        return []

    def _validate_choice(self, name: str, value: Any, choices) -> List[ValidationResult]:
        if value in choices:
            return []
        return [ValidationResult(
            is_valid=False,
            severity=ValidationSeverity.ERROR,
            field_name=name,
            message=f"unsupported {name}",
            expected_value=", ".join(choices),
            actual_value=value,
        )]

    def _validate_positive(self, name: str, value: Any) -> List[ValidationResult]:
        if isinstance(value, int) and value >= 1:
            return []
        return [ValidationResult(
            is_valid=False,
            severity=ValidationSeverity.ERROR,
            field_name=name,
            message=f"{name} must be a positive integer",
            actual_value=value,
        )]

    def _validate_method_logic(self, cfg: RunConfig) -> List[ValidationResult]:
        results = []
        if cfg.family == "sln" and cfg.method in ("formula", "both"):
            results.append(ValidationResult(
                is_valid=False,
                severity=ValidationSeverity.ERROR,
                field_name="method",
                message="no cocharacter formula exists for the sl_n model",
                expected_value="brute",
                actual_value=cfg.method,
                suggestion="use --method brute or the sln subcommand",
            ))
        slow_at = self.slow_brute_force.get(cfg.family)
        if (slow_at is not None and cfg.m_max is not None and cfg.method in ("brute", "both")
                and cfg.m_max > slow_at):
            results.append(ValidationResult(
                is_valid=True,
                severity=ValidationSeverity.WARNING,
                field_name="m_max",
                message="brute force beyond the tested range may take a long time",
                expected_value=f"<= {slow_at}",
                actual_value=cfg.m_max,
            ))
        return results


def errors(results: List[ValidationResult]) -> List[ValidationResult]:
    return [r for r in results if not r.is_valid]


def format_validation_report(results: List[ValidationResult]) -> str:
    lines = []
    for result in results:
        lines.append(f"[{result.severity.value}] {result}")
    return "\n".join(lines)
