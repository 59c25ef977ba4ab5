"""Python bindings for the bogotool numerical toolkit."""

try:
    from ._core import *  # noqa: F401,F403
except ImportError:  # pragma: no cover - build layout fallback
    from _core import *  # noqa: F401,F403

__all__ = [
    "phi_eval",
    "phi_prime",
    "conjugate_eval",
    "delta2_estimate",
    "shifted_eval",
    "young_check",
    "stress",
    "f_assoc",
    "modular",
    "luxemburg_norm",
    "whitney_check",
    "cz_check",
    "bogovskii_apply",
    "pstokes_solve",
]
