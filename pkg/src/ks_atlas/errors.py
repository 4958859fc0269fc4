"""Exception types shared across the package."""


class KsAtlasError(Exception):
    """Base class for all package-specific errors."""


class RingError(KsAtlasError, ValueError):
    """Malformed ring descriptor (non-squarefree d, bad congruence, n < 1)."""


class MixedRingError(KsAtlasError, ValueError):
    """Operands belong to different coefficient rings."""


class ColorablePool(KsAtlasError):
    """A minimization routine was handed a pool that admits a coloring."""


class ColorableInput(KsAtlasError):
    """A structural analysis requires a KS-uncolorable input graph."""


class NonTermination(KsAtlasError):
    """Completion failed to reach a fixpoint within the configured caps."""


class BudgetExceeded(KsAtlasError):
    """Certification ran out of budget; carries the partial lower bound."""

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class ConvergenceFailure(KsAtlasError):
    """Iterative solver did not reach the requested accuracy."""


class RankDeficientInput(KsAtlasError):
    """Floating embedding violates the exact constraints beyond tolerance."""
