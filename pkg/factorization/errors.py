"""Exceptions raised by the factorization stack."""


class A1GMError(Exception):
    """Base class for every error raised by this package."""


class ShapeMismatchError(A1GMError, ValueError):
    pass


class DivergenceUndefinedError(A1GMError, ValueError):
    """KL divergence is undefined: the model is 0 where the data is positive."""


class NonPositiveEntryError(A1GMError, ValueError):
    """A block that must be strictly positive holds an entry <= 0."""

    def __init__(self, block: str, index: tuple, value: float):
        self.block = block
        self.index = tuple(int(i) for i in index)
        self.value = float(value)
        super().__init__(
            f"{block} must be strictly positive; first offending entry "
            f"{self.index} = {self.value!r}"
        )


class InfeasibleMaskError(A1GMError, ValueError):
    """Grid expansion would leave no fully observed block to factorize."""


class InputFormatError(A1GMError, ValueError):
    pass


class NumericFailureError(A1GMError, ArithmeticError):
    pass
