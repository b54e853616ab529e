"""Tests for the conference Q&A rules, answers, and dialogue state."""

import json
import pathlib

import pytest

from scireader.qa import (
    ConferenceKb,
    DialogueState,
    QaBot,
    answer,
    detect_language,
    parse_utterance,
    resolve_coref,
)

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def kb():
    return ConferenceKb.bundled()


def fresh_state(session="s"):
    return DialogueState(session_id=session)


def parse(text, kb, state=None):
    return parse_utterance(text, state or fresh_state(), kb)


def raw_kb():
    import importlib.resources as res

    return json.loads(
        res.files("scireader.data").joinpath("conference_kb.json").read_text("utf-8")
    )["records"]


# -- knowledge base ------------------------------------------------------


def test_kb_shape(kb):
    assert len(kb.records) == 40
    aliases = [a for r in kb.records for a in r.aliases]
    assert len(aliases) == len(set(aliases))


def test_alias_resolution(kb):
    assert kb.resolve("tkde").name == "IEEE Transactions on Knowledge and Data Engineering"
    assert kb.resolve("NeurIPS") is kb.resolve("NIPS")


def test_mention_boundaries(kb):
    # "CL" must not fire inside "ACL", and ASCII aliases work in Chinese text
    assert kb.find_mention("the ACL conference").aliases == ("ACL",)
    assert kb.find_mention("ACL的截稿日期").aliases == ("ACL",)
    assert kb.find_mention("nothing here") is None


# -- parsing -------------------------------------------------------------


def test_parse_if_of_tkde(kb):
    intent = parse("What is the IF of TKDE?", kb)
    assert intent.kind == "attribute"
    assert intent.attribute == "impact_factor"
    assert intent.venue == "IEEE Transactions on Knowledge and Data Engineering"
    assert intent.language == "en"


def test_parse_may_2022_list(kb):
    intent = parse("what conferences have been held in May 2022?", kb)
    assert intent.kind == "conference_list"
    assert (intent.date_from, intent.date_to) == ("2022-05-01", "2022-05-31")
    assert intent.place is None


def test_parse_search_handoff(kb):
    intent = parse("find papers about dialog", kb)
    assert intent.kind == "search_handoff"
    assert intent.keywords == "dialog"


def test_parse_pronoun_defers(kb):
    intent = parse("Where is it held", kb)
    assert intent.kind == "attribute"
    assert intent.attribute == "host_place"
    assert intent.venue is None
    assert intent.pronoun


def test_parse_chinese_attribute(kb):
    intent = parse("TKDE的影响因子是多少？", kb)
    assert intent.language == "zh"
    assert intent.kind == "attribute"
    assert intent.attribute == "impact_factor"


def test_parse_chinese_word_month(kb):
    intent = parse("2022年五月有哪些会议？", kb)
    assert intent.kind == "conference_list"
    assert (intent.date_from, intent.date_to) == ("2022-05-01", "2022-05-31")


def test_precedence_attribute_over_list(kb):
    # attribute word plus a named venue wins over the list trigger
    intent = parse("Which conferences share the deadline of ACL?", kb)
    assert intent.kind == "attribute" and intent.attribute == "deadline"


def test_precedence_list_when_no_venue(kb):
    intent = parse("Show conferences of rank A held in May 2022", kb)
    assert intent.kind == "conference_list"
    assert intent.level == "A"


def test_unparseable_is_unknown(kb):
    assert parse("Tell me a joke", kb).kind == "unknown"
    with pytest.raises(ValueError):
        parse("   ", kb)


# -- coreference ---------------------------------------------------------


def test_coref_fills_last_venue(kb):
    state = DialogueState(session_id="s", last_venue=kb.resolve("ACL").name)
    intent = resolve_coref(parse("Where is it held", kb), state)
    assert intent.venue == kb.resolve("ACL").name


def test_coref_empty_state_unchanged(kb):
    intent = parse("Where is it held", kb)
    assert resolve_coref(intent, fresh_state()) == intent


def test_coref_no_override(kb):
    state = DialogueState(session_id="s", last_venue=kb.resolve("ACL").name)
    intent = resolve_coref(parse("Where is CVPR held?", kb), state)
    assert intent.venue == kb.resolve("CVPR").name


# -- answers -------------------------------------------------------------


def test_answer_tkde_if(kb):
    ans, state = answer(parse("What is the IF of TKDE?", kb), kb, fresh_state(), now=0.0)
    assert "6.977" in ans.text
    assert ans.payload["value"] == 6.977
    assert ans.confidence == "matched"
    assert state.last_venue == "IEEE Transactions on Knowledge and Data Engineering"


def test_answer_list_matches_brute_force(kb):
    intent = parse("what conferences have been held in May 2022?", kb)
    ans, _ = answer(intent, kb, fresh_state(), now=0.0)
    expected = [
        r["name"]
        for r in raw_kb()
        if r.get("kind") == "conference"
        and r.get("date_start") is not None
        and r["date_start"] <= "2022-05-31"
        and r["date_end"] >= "2022-05-01"
    ]
    assert ans.payload["conferences"] == expected
    assert len(expected) >= 3
    for name in expected:
        assert name in ans.text


def test_answer_clarification_fallback(kb):
    ans, state = answer(parse("What is the deadline?", kb), kb, fresh_state(), now=0.0)
    assert ans.confidence == "fallback"
    assert "Which conference" in ans.text
    assert state.last_venue is None


def test_answer_missing_value_fallback(kb):
    # journals have no host place on record
    ans, _ = answer(parse("Where is TKDE held?", kb), kb, fresh_state(), now=0.0)
    assert ans.confidence == "fallback"


def test_answer_handoff_payload(kb):
    ans, _ = answer(parse("find papers about dialog", kb), kb, fresh_state(), now=0.0)
    assert ans.kind == "search_handoff"
    assert ans.payload == {"keywords": "dialog"}


def test_answer_language_echo(kb):
    en, _ = answer(parse("What is the IF of TKDE?", kb), kb, fresh_state(), now=0.0)
    zh, _ = answer(parse("TKDE的影响因子是多少？", kb), kb, fresh_state(), now=0.0)
    assert en.language == "en" and zh.language == "zh"
    assert "影响因子" in zh.text and "6.977" in zh.text


def test_determinism(kb):
    state = fresh_state()
    first = answer(parse("When is EMNLP held?", kb), kb, state, now=5.0)
    second = answer(parse("When is EMNLP held?", kb), kb, state, now=5.0)
    assert first == second


def test_state_monotonic(kb):
    state = fresh_state()
    _, s1 = answer(parse("Tell me a joke", kb), kb, state, now=1.0)
    assert s1.turn_count == 1 and s1.last_venue is None
    _, s2 = answer(parse("What is the IF of TKDE?", kb), kb, s1, now=2.0)
    assert s2.turn_count == 2 and s2.last_venue is not None
    _, s3 = answer(parse("Tell me a joke", kb), kb, s2, now=3.0)
    assert s3.turn_count == 3 and s3.last_venue == s2.last_venue


# -- multi-round sessions ------------------------------------------------


def test_multi_round_deadline_then_place(kb):
    bot = QaBot(kb)
    first = bot.ask("s1", "What is the deadline of ACL", now=0.0)
    assert "2021-11-15" in first.text
    second = bot.ask("s1", "Where is it held", now=60.0)
    assert "Dublin" in second.text
    assert second.payload["venue"] == kb.resolve("ACL").name


def test_session_expiry_clears_context(kb):
    bot = QaBot(kb)
    bot.ask("s1", "What is the deadline of ACL", now=0.0)
    late = bot.ask("s1", "Where is it held", now=31 * 60.0)
    assert late.confidence == "fallback"


def test_session_survives_short_gap(kb):
    bot = QaBot(kb)
    bot.ask("s1", "What is the deadline of ACL", now=0.0)
    soon = bot.ask("s1", "Where is it held", now=29 * 60.0)
    assert "Dublin" in soon.text


def test_sessions_isolated(kb):
    bot = QaBot(kb)
    bot.ask("s1", "What is the deadline of ACL", now=0.0)
    other = bot.ask("s2", "Where is it held", now=1.0)
    assert other.confidence == "fallback"


# -- suite smoke ---------------------------------------------------------


def test_suite_intents_all_as_labeled(kb):
    suite = json.loads((DATA / "qa_suite.json").read_text("utf-8"))
    bot_states = {}
    for item in suite["items"]:
        state = bot_states.get(item["session"], DialogueState(session_id=item["session"]))
        intent = resolve_coref(parse_utterance(item["text"], state, kb), state)
        want = item["intent"]
        assert detect_language(item["text"]) == item["language"], item["text"]
        assert intent.kind == want["kind"], item["text"]
        for slot in ("attribute", "venue", "date_from", "date_to", "place", "level", "keywords"):
            if slot in want:
                assert getattr(intent, slot) == want[slot], (item["text"], slot)
        _, new_state = answer(intent, kb, state, now=0.0)
        bot_states[item["session"]] = new_state
