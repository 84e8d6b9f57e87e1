from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class Check:
    """Outcome of an exhaustive check. Failures always carry a witness."""

    passed: bool
    witness: Any = None
    witnesses: Optional[list] = field(default=None, compare=False)

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        out = {"pass": self.passed, "witness": _plain(self.witness)}
        if self.witnesses is not None:
            out["witnesses"] = _plain(self.witnesses)
        return out


PASS = Check(True)


def fail(witness, witnesses=None) -> Check:
    return Check(False, witness, witnesses)


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if hasattr(value, "item"):
        return value.item()
    return value
