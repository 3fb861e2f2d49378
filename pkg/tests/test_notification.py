import json
from dataclasses import replace
from datetime import date

import pytest

from fria.errors import NotificationError, UnknownTermError
from fria.graph import Graph, Iri
from fria.model import (
    HAS_NOTICE,
    NOTIF_EXEMPT,
    NOTIF_NEEDED,
    NOTIF_NOT_SENT,
    NOTIF_SENT,
    NotificationState,
    to_graph,
)
from fria.namespaces import FRIA
from fria.notification import (
    Decision,
    build_notice,
    draft_notice,
    load_status_extensions,
    render_notice_text,
    resolve_notification,
)
from fria.validation import CqId, answer_cq
from fria.vocabulary import catalog

from conftest import GOLDEN_AUTHORITY, build_golden_record


def pre_notification_record():
    golden = build_golden_record()
    return replace(golden, notification=None, remainder=Graph())


class TestResolve:
    def test_exempt_with_basis(self):
        record = pre_notification_record()
        status = resolve_notification(record, Decision(exempt=True, basis="Article 46(1) authorisation"))
        assert status == NOTIF_EXEMPT

    def test_exempt_without_basis_is_error(self):
        with pytest.raises(NotificationError):
            resolve_notification(pre_notification_record(), Decision(exempt=True))

    def test_outcome_missing_is_error(self):
        record = pre_notification_record()
        record = replace(record, outcome=None)
        with pytest.raises(NotificationError):
            resolve_notification(record, Decision(exempt=False))

    def test_progression_needed_not_sent_sent(self):
        record = pre_notification_record()
        assert resolve_notification(record, Decision(exempt=False)) == NOTIF_NEEDED
        drafted, _ = draft_notice(record, GOLDEN_AUTHORITY)
        assert resolve_notification(drafted, Decision(exempt=False)) == NOTIF_NOT_SENT
        sent = replace(
            drafted,
            notification=replace(drafted.notification, status=NOTIF_SENT, sent_on=date(2024, 12, 10)),
        )
        assert resolve_notification(sent, Decision(exempt=False)) == NOTIF_SENT


class TestBuildNotice:
    def test_notice_graph_links_from_notification_node(self):
        record = pre_notification_record()
        notice, graph = build_notice(record, GOLDEN_AUTHORITY)
        notif_node = record.stage_iri("notification")
        assert graph.match(notif_node, Iri(HAS_NOTICE), notice.iri)

    def test_exempt_record_cannot_draft(self):
        record = pre_notification_record()
        record = replace(
            record,
            notification=NotificationState(NOTIF_EXEMPT, exemption_basis="Art 46(1)"),
        )
        with pytest.raises(NotificationError):
            build_notice(record, GOLDEN_AUTHORITY)

    def test_rights_list_equals_cq6(self):
        record = pre_notification_record()
        notice, _ = build_notice(record, GOLDEN_AUTHORITY)
        cq6 = answer_cq(to_graph(record), record.iri, CqId.CQ6)
        assert set(notice.summary.rights_impacted) == {row[0] for row in cq6.bindings}

    def test_mitigations_equal_cq4(self):
        record = pre_notification_record()
        notice, _ = build_notice(record, GOLDEN_AUTHORITY)
        cq4 = answer_cq(to_graph(record), record.iri, CqId.CQ4)
        assert set(notice.summary.mitigations) == {row[0] for row in cq4.bindings}

    def test_rendering_deterministic(self):
        record = pre_notification_record()
        notice, _ = build_notice(record, GOLDEN_AUTHORITY)
        assert render_notice_text(notice, record) == render_notice_text(notice, record)

    def test_rendered_fields(self):
        record = pre_notification_record()
        notice, _ = build_notice(record, GOLDEN_AUTHORITY)
        text = render_notice_text(notice, record)
        assert "outcome: FRIAOutcomeRisksMitigated" in text
        assert "deployment permitted: yes" in text
        assert str(GOLDEN_AUTHORITY) in text

    def test_draft_notice_is_reentrant(self):
        record = pre_notification_record()
        once, _ = draft_notice(record, GOLDEN_AUTHORITY)
        twice, _ = draft_notice(once, Iri("https://example.org/authority/other"))
        # the previous draft is superseded, not accumulated
        notice_subjects = [
            t for t in twice.remainder.triples if t.subject == record.stage_iri("notice")
        ]
        recipients = [t for t in notice_subjects if t.predicate.value.endswith("hasRecipient")]
        assert len(recipients) == 1

    def test_sent_record_graph_keeps_notice(self):
        golden = build_golden_record()
        g = to_graph(golden)
        notif_node = golden.stage_iri("notification")
        assert g.match(notif_node, Iri(HAS_NOTICE), golden.stage_iri("notice"))


class TestStatusExtensions:
    def test_load_adds_instances(self, tmp_path):
        path = tmp_path / "ext.json"
        path.write_text(
            json.dumps(
                [
                    {
                        "local": "FRIANotificationExemptIE",
                        "label": "Exempt (Ireland)",
                        "definition": "Exempt under the Irish market surveillance regime.",
                        "source": "AI Act Art 46(1)",
                    }
                ]
            )
        )
        extended = load_status_extensions(catalog(), path)
        term = extended.term(FRIA + "FRIANotificationExemptIE")
        assert term.parents == frozenset({FRIA + "FRIANotificationStatus"})
        assert len(extended.instances_of(FRIA + "FRIANotificationStatus")) == 5
        # the base catalog is untouched
        with pytest.raises(UnknownTermError):
            catalog().term(FRIA + "FRIANotificationExemptIE")

    def test_unknown_fields_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps([{"local": "X", "label": "x", "oops": 1}]))
        with pytest.raises(NotificationError):
            load_status_extensions(catalog(), path)
