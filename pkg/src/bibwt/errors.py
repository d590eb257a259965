"""Exception hierarchy shared by all index layers."""


class BibwtError(Exception):
    pass


class OutOfRangeError(BibwtError, IndexError):
    pass


class InvalidSymbolError(BibwtError, ValueError):
    pass


class TreeQueryError(BibwtError, ValueError):
    pass


class TextError(BibwtError, ValueError):
    pass


class AlphabetOverflowError(TextError):
    pass


class NotFoundError(BibwtError, LookupError):
    """The requested extension or string does not occur in the text."""


class EmptyDescriptorError(BibwtError):
    """Contraction or order decrease requested on the empty string."""


class DescriptorError(BibwtError, ValueError):
    """Descriptor is inconsistent with the index it was passed to."""


class NoMaximalRepeatError(BibwtError, LookupError):
    pass


class IndexFormatError(BibwtError):
    pass
