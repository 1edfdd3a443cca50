"""Exception types raised across the package."""


class TailError(RuntimeError):
    """Fock truncation too small: probability mass leaks into the top band."""

    def __init__(self, tail, dim, tol):
        self.tail = tail
        self.dim = dim
        self.tol = tol
        super().__init__(
            f"tail mass {tail:.3e} >= {tol:.1e} at fock_dim={dim}"
        )


class ConvergenceError(RuntimeError):
    """An iterative numerical routine missed its internal tolerance."""


class DomainError(ValueError):
    """Argument outside the domain of a formula."""


class SingularMatrixError(ArithmeticError):
    """Matrix too close to singular to invert.

    For the information matrices this is the sloppy regime (e.g. no
    scrambling phase), which is physics rather than a numerical bug.
    """


class OptimizationError(RuntimeError):
    """Setting optimizer did not converge within its evaluation budget."""
