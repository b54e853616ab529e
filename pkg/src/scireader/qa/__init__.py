"""Rule-based conference Q&A with multi-round context."""

from .bot import SESSION_TTL, Answer, DialogueState, QaBot, answer
from .intents import Intent, detect_language, parse_utterance, resolve_coref
from .kb import ATTRIBUTES, KB_SCHEMA, ConferenceKb, ConferenceRecord

__all__ = [
    "ConferenceKb",
    "ConferenceRecord",
    "KB_SCHEMA",
    "ATTRIBUTES",
    "Intent",
    "parse_utterance",
    "resolve_coref",
    "detect_language",
    "Answer",
    "DialogueState",
    "QaBot",
    "answer",
    "SESSION_TTL",
]
