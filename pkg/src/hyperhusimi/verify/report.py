"""Pass/fail records comparing a closed form with its oracle."""

import json
import time
from dataclasses import dataclass


@dataclass(frozen=True)
class VerificationReport:
    label: str
    formula_value: complex
    oracle_value: complex
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    runtime_ms: float

    def to_dict(self) -> dict:
        # flat schema; complex values split so every field is a JSON scalar
        f, o = complex(self.formula_value), complex(self.oracle_value)
        return {
            "label": self.label,
            "formula_value_re": f.real,
            "formula_value_im": f.imag,
            "oracle_value_re": o.real,
            "oracle_value_im": o.imag,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tol": self.tol,
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
        }


def compare(label: str, formula_value, oracle_value, tol: float, runtime_ms: float = 0.0) -> VerificationReport:
    """Build a report; it passes when either the absolute or relative error is within tol."""
    abs_err = abs(complex(formula_value) - complex(oracle_value))
    scale = abs(complex(oracle_value))
    rel_err = abs_err / scale if scale else (0.0 if abs_err == 0 else float("inf"))
    return VerificationReport(
        label, formula_value, oracle_value, abs_err, rel_err, tol, abs_err <= tol or rel_err <= tol, runtime_ms
    )


def timed_check(label: str, formula, oracle, tol: float) -> VerificationReport:
    """Evaluate two zero-argument callables and compare them, recording wall time."""
    t0 = time.perf_counter()
    f = formula()
    o = oracle()
    return compare(label, f, o, tol, 1e3 * (time.perf_counter() - t0))


def reports_to_json(reports, indent=None) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=indent)
