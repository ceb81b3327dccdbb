"""Exception types raised across the package."""


class HardyInnerError(Exception):
    """Base class for all package errors."""


class InvalidWeight(HardyInnerError, ValueError):
    pass


class WeightConditionViolation(HardyInnerError, ValueError):
    """The ratio test on a weight tail failed at ``index``."""

    def __init__(self, index, ratio, message=None):
        self.index = index
        self.ratio = ratio
        super().__init__(
            message or f"weight ratio omega[{index + 1}]/omega[{index}] = {ratio:.6g} outside tolerance"
        )


class SpaceMismatch(HardyInnerError, ValueError):
    pass


class ZeroVector(HardyInnerError, ValueError):
    pass


class OutsideDomain(HardyInnerError, ValueError):
    pass


class IllConditionedGram(HardyInnerError, ArithmeticError):
    """Gram system too close to singular to solve reliably.

    ``condition`` is the condition number of the diagonally equilibrated
    Gram matrix and ``det_estimate`` its determinant (the normalised Gram
    determinant, in (0, 1]).
    """

    def __init__(self, condition, det_estimate, message=None):
        self.condition = condition
        self.det_estimate = det_estimate
        super().__init__(
            message
            or f"Gram matrix ill-conditioned (cond={condition:.3e}, normalised det={det_estimate:.3e})"
        )


class UseProjectionPath(HardyInnerError, ValueError):
    pass
