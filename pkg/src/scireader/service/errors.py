"""Machine-readable service errors: {code, message, detail} + HTTP status."""

from __future__ import annotations


class ApiError(Exception):
    code = "Internal"
    status = 500

    def __init__(self, message: str, detail=None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "detail": self.detail}


class UnknownDoc(ApiError):
    code = "UnknownDoc"
    status = 404


class NotAPdfUpload(ApiError):
    code = "NotAPdf"
    status = 400


class TooLarge(ApiError):
    code = "TooLarge"
    status = 413


class FetchFailed(ApiError):
    code = "FetchFailed"
    status = 502


class DoiUnresolved(ApiError):
    code = "DoiUnresolved"
    status = 404


class BadRequest(ApiError):
    code = "BadRequest"
    status = 400


class NotReady(ApiError):
    code = "NotReady"
    status = 409


class TextTooLong(ApiError):
    code = "TextTooLong"
    status = 413


class ProviderUnavailable(ApiError):
    code = "ProviderUnavailable"
    status = 503
