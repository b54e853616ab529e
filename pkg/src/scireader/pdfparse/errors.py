"""Errors raised while parsing PDF files."""


class PdfError(Exception):
    pass


class NotAPdf(PdfError):
    """Input bytes are not a parseable PDF (bad header or xref)."""


class EncryptedUnsupported(PdfError):
    """The document carries an encryption dictionary."""


class UnsupportedFeature(PdfError):
    """Content outside the supported PDF subset."""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class PageOutOfRange(PdfError):
    pass
