"""Answer generation and multi-round dialogue state."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from .intents import Intent, parse_utterance, resolve_coref
from .kb import ConferenceKb

SESSION_TTL = 30 * 60  # seconds of inactivity before context is dropped

_ATTR_LABELS = {
    "en": {
        "host_date": "host date",
        "host_place": "host place",
        "deadline": "submission deadline",
        "level": "level",
        "impact_factor": "impact factor",
    },
    "zh": {
        "host_date": "举办时间",
        "host_place": "举办地点",
        "deadline": "截稿日期",
        "level": "级别",
        "impact_factor": "影响因子",
    },
}


@dataclass(frozen=True)
class DialogueState:
    session_id: str
    last_venue: str | None = None
    last_attribute: str | None = None
    turn_count: int = 0
    last_activity: float = 0.0


@dataclass(frozen=True)
class Answer:
    text: str
    payload: dict = field(default_factory=dict)
    confidence: str = "matched"  # matched | fallback
    kind: str = "unknown"
    language: str = "en"


def _format_value(attr, value, lang):
    if attr == "host_date":
        start, end = value
        if lang == "zh":
            return f"{start} 至 {end}"
        return f"{start} to {end}"
    return str(value)


def _attribute_answer(intent: Intent, kb: ConferenceKb, lang: str):
    label = _ATTR_LABELS[lang][intent.attribute]
    if intent.venue is None:
        text = (
            "请问您指的是哪个会议或期刊？"
            if lang == "zh"
            else "Which conference or journal do you mean?"
        )
        return Answer(text=text, confidence="fallback", kind="attribute", language=lang), None
    rec = kb.resolve(intent.venue) or kb.find_mention(intent.venue)
    if rec is None:
        text = (
            f"我没有找到 {intent.venue} 的记录。"
            if lang == "zh"
            else f"I have no record of {intent.venue}."
        )
        return Answer(text=text, confidence="fallback", kind="attribute", language=lang), None
    value = rec.attribute(intent.attribute)
    if value is None:
        text = (
            f"我没有 {rec.name} 的{label}信息。"
            if lang == "zh"
            else f"I do not have the {label} of {rec.name} on record."
        )
        return Answer(text=text, confidence="fallback", kind="attribute", language=lang), rec
    shown = _format_value(intent.attribute, value, lang)
    if lang == "zh":
        text = f"{rec.name}的{label}是{shown}。"
    else:
        text = f"The {label} of {rec.name} is {shown}."
    payload = {
        "attribute": intent.attribute,
        "venue": rec.name,
        "value": list(value) if isinstance(value, tuple) else value,
    }
    return Answer(text=text, payload=payload, kind="attribute", language=lang), rec


def _list_answer(intent: Intent, kb: ConferenceKb, lang: str):
    hits = kb.list_matching(
        date_from=intent.date_from,
        date_to=intent.date_to,
        place=intent.place,
        level=intent.level,
    )
    names = [r.name for r in hits]
    payload = {
        "conferences": names,
        "constraints": {
            "date_from": intent.date_from,
            "date_to": intent.date_to,
            "place": intent.place,
            "level": intent.level,
        },
    }
    if not names:
        text = "没有符合条件的会议。" if lang == "zh" else "No conferences match those constraints."
        return Answer(text=text, payload=payload, confidence="fallback",
                      kind="conference_list", language=lang)
    if lang == "zh":
        text = "符合条件的会议有：" + "、".join(names) + "。"
    else:
        text = "Conferences matching your constraints: " + "; ".join(names) + "."
    return Answer(text=text, payload=payload, kind="conference_list", language=lang)


def answer(intent: Intent, kb: ConferenceKb, state: DialogueState, now=None):
    """Render one turn. Returns (Answer, new DialogueState)."""
    now = time.time() if now is None else now
    lang = intent.language
    new_state = replace(state, turn_count=state.turn_count + 1, last_activity=now)

    if intent.kind == "attribute":
        ans, rec = _attribute_answer(intent, kb, lang)
        if rec is not None:
            new_state = replace(new_state, last_venue=rec.name, last_attribute=intent.attribute)
        return ans, new_state
    if intent.kind == "conference_list":
        return _list_answer(intent, kb, lang), new_state
    if intent.kind == "search_handoff":
        if lang == "zh":
            text = f"正在为您搜索“{intent.keywords}”相关论文。"
        else:
            text = f'Searching papers for "{intent.keywords}".'
        ans = Answer(text=text, payload={"keywords": intent.keywords},
                     kind="search_handoff", language=lang)
        return ans, new_state
    text = (
        "抱歉，我没有理解您的问题。"
        if lang == "zh"
        else "Sorry, I did not understand the question."
    )
    return Answer(text=text, confidence="fallback", kind="unknown", language=lang), new_state


class QaBot:
    """Session-aware front door: parse, resolve coreference, answer."""

    def __init__(self, kb: ConferenceKb | None = None, ttl: float = SESSION_TTL):
        self.kb = kb or ConferenceKb.bundled()
        self.ttl = ttl
        self._sessions: dict = {}

    def state_for(self, session_id: str, now: float) -> DialogueState:
        state = self._sessions.get(session_id)
        if state is None or now - state.last_activity > self.ttl:
            state = DialogueState(session_id=session_id, last_activity=now)
        return state

    def ask(self, session_id: str, text: str, now=None) -> Answer:
        now = time.time() if now is None else now
        state = self.state_for(session_id, now)
        intent = parse_utterance(text, state, self.kb)
        intent = resolve_coref(intent, state)
        ans, new_state = answer(intent, self.kb, state, now=now)
        self._sessions[session_id] = new_state
        return ans
