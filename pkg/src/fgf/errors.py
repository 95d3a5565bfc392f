"""Exception types shared across the package."""


class FgfError(Exception):
    """Base class for all errors raised by this library."""


class GeneratorIndexError(FgfError):
    """A letter refers to a generator outside the ambient rank."""


class ContextMismatchError(FgfError):
    """Operands live in free groups of different ranks."""


class EmptyWordError(FgfError):
    """The operation is undefined for the identity word."""


class ParseError(FgfError):
    """Malformed textual input."""


class NotAutomorphismError(FgfError):
    """The generator map does not define an automorphism."""


class NotInvolutionError(FgfError):
    """The map does not have order two."""


class CanonicalDataError(FgfError):
    """The partition data does not describe a valid canonical involution."""


class FormError(FgfError):
    """The input does not have the shape this operation requires."""


class DecompositionError(FgfError):
    """The element does not satisfy the decomposition precondition."""


class NoSpareGeneratorError(FgfError):
    """Every generator occurs in the word; no unused generator is available."""


class BasisPropertyError(FgfError):
    """A basis-extraction parameter tuple violates one of the named properties."""

    def __init__(self, name: str, message: str):
        super().__init__(f"property ({name}) violated: {message}")
        self.property_name = name


class FunctionEncodingError(FgfError):
    """An automorphism is not of the function-encoding shape."""

    def __init__(self, message: str, generator_index: int | None = None):
        super().__init__(message)
        self.generator_index = generator_index


class InternalCheckError(FgfError):
    """Two independent computation routes disagreed; this signals a bug."""
