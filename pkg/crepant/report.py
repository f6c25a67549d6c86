"""
Crepant reports
Schema-versioned, JSON-serializable results of the command-line operations
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Any, Optional, Union

from .errors import InvalidInputError

SCHEMA_VERSION = 1


def format_rational(value: Union[int, Fraction]) -> str:
    """Exact rational as a 'num/den' string"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        num, den = str(text).split("/")
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"not a 'num/den' rational: {text!r}")


@dataclass
class Report:
    """Everything one command produced, keyed by section"""
    command: str
    input: Dict[str, Any] = field(default_factory=dict)
    decision: Optional[Dict[str, Any]] = None
    char: Optional[Dict[str, Any]] = None
    fan: Optional[Dict[str, Any]] = None
    ehrhart: Optional[Dict[str, Any]] = None
    delta: Optional[list] = None
    extra: Dict[str, Any] = field(default_factory=dict)
    timing_ms: Optional[float] = None
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "schema_version": self.schema_version,
            "command": self.command,
            "input": self.input,
        }
        for key in ("decision", "char", "fan", "ehrhart", "delta"):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        if self.extra:
            data["extra"] = self.extra
        if self.timing_ms is not None:
            data["timing_ms"] = self.timing_ms
        return data

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "Report":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise InvalidInputError(f"unsupported report schema version {version!r}")
        return Report(
            command=data["command"],
            input=data.get("input", {}),
            decision=data.get("decision"),
            char=data.get("char"),
            fan=data.get("fan"),
            ehrhart=data.get("ehrhart"),
            delta=data.get("delta"),
            extra=data.get("extra", {}),
            timing_ms=data.get("timing_ms"),
            schema_version=version,
        )

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @staticmethod
    def from_json(text: str) -> "Report":
        return Report.from_dict(json.loads(text))
