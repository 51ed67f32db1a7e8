"""Exception hierarchy shared by all modules."""


class StratosError(Exception):
    """Base class. ``kind`` and ``witness`` feed the CLI's JSON diagnostics."""

    kind = "error"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_json(self):
        out = {"error": self.kind, "message": str(self)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class InputError(StratosError, ValueError):
    kind = "input"


class NotAPartialOrder(InputError):
    kind = "not-a-partial-order"


class TopologyError(InputError):
    """The given family of subsets is not a topology."""

    kind = "not-a-topology"


class ContinuityError(StratosError):
    kind = "not-continuous"


class WellDefinednessError(StratosError):
    kind = "not-well-defined"


class SizeError(StratosError):
    """Enumeration would exceed the configured budget."""

    kind = "budget-exceeded"
