import pytest

from reconsys.ipgen import TargetSpace
from reconsys.orchestrator import (
    DeadNodeError,
    MasterConfig,
    ScanMaster,
    UnauthorizedRangeError,
    UnknownNodeError,
    UnknownUnitError,
    load_catalog,
)


def space24(port=80, protocol="http") -> TargetSpace:
    return TargetSpace.from_strings(["10.0.0.0/24"], port, protocol)


class TestOperations:
    def test_slash24_with_unit_size_64_gives_4_pending_units(self, master):
        op = master.create_operation(space24(), seed=1, unit_size=64)
        status = master.status(op)
        assert status.pending == 4
        assert status.total_units == 4
        assert not status.finished

    def test_site_groups_duplicate_unit_instances(self, master):
        op = master.create_operation(
            space24(), seed=1, unit_size=64, site_groups=["A", "B"]
        )
        status = master.status(op)
        assert status.total_units == 8
        assert status.per_group_total == {"A": 4, "B": 4}

    def test_catalog_load_creates_89_operations(self, master):
        catalog = load_catalog()
        assert len(catalog) == 89
        ids = master.create_from_catalog(catalog, ["127.50.0.0/30"], seed=3)
        assert len(ids) == 89
        assert len(set(ids)) == 89

    def test_public_ranges_refused_by_default(self, master):
        public = TargetSpace.from_strings(["8.8.8.0/24"], 80, "http")
        with pytest.raises(UnauthorizedRangeError):
            master.create_operation(public, seed=1)

    def test_public_ranges_allowed_when_authorized(self, manual_clock):
        m = ScanMaster(MasterConfig(allow_public_ranges=True), clock=manual_clock)
        public = TargetSpace.from_strings(["8.8.8.0/24"], 80, "http")
        m.create_operation(public, seed=1)  # no raise

    def test_duplicate_site_groups_rejected(self, master):
        with pytest.raises(ValueError):
            master.create_operation(space24(), seed=1, site_groups=["A", "A"])


class TestAssignment:
    def test_three_units_then_none(self, master):
        op = master.create_operation(space24(), seed=1, unit_size=100)
        master.register_node("n1")
        got = [master.next_unit("n1") for _ in range(4)]
        ids = [u.unit_id for u in got if u is not None]
        assert len(ids) == 3
        assert len(set(ids)) == 3
        assert got[3] is None
        assert master.status(op).assigned == 3

    def test_interleaved_nodes_never_share_a_unit(self, master):
        master.create_operation(space24(), seed=1, unit_size=16)
        master.register_node("n1")
        master.register_node("n2")
        seen = []
        for i in range(20):
            unit = master.next_unit("n1" if i % 2 == 0 else "n2")
            if unit is not None:
                seen.append(unit.unit_id)
        assert len(seen) == len(set(seen)) == 16

    def test_group_isolation(self, master):
        master.create_operation(space24(), seed=1, unit_size=64, site_groups=["A", "B"])
        master.register_node("a1", site_group="A")
        units = []
        while (u := master.next_unit("a1")) is not None:
            units.append(u)
        assert len(units) == 4
        assert all(u.site_group == "A" for u in units)

    def test_unknown_node_rejected(self, master):
        master.create_operation(space24(), seed=1)
        with pytest.raises(UnknownNodeError):
            master.next_unit("ghost")


class TestSubmission:
    def test_unit_completes_exactly_once(self, master):
        op = master.create_operation(space24(), seed=1, unit_size=256)
        master.register_node("n1")
        unit = master.next_unit("n1")
        ack = master.submit_result("n1", unit.unit_id, [{"ip": "10.0.0.1"}])
        assert ack == {"accepted": True, "duplicate": False}
        status = master.status(op)
        assert status.completed == 1
        assert status.finished

    def test_duplicate_submission_idempotent(self, master):
        op = master.create_operation(space24(), seed=1, unit_size=256)
        master.register_node("n1")
        unit = master.next_unit("n1")
        master.submit_result("n1", unit.unit_id, [{"ip": "10.0.0.1"}])
        before = master.status(op).to_doc()
        ack = master.submit_result("n1", unit.unit_id, [{"ip": "10.0.0.1"}])
        assert ack["duplicate"] is True
        # replay changes no counters
        assert master.status(op).to_doc() == before
        assert len(master.submissions(op)) == 1

    def test_unknown_unit_rejected(self, master):
        master.register_node("n1")
        with pytest.raises(UnknownUnitError):
            master.submit_result("n1", "op-xx/default/00000", [])


class TestFailureDetection:
    def test_silent_node_becomes_suspect_then_dead(self, master, manual_clock):
        master.create_operation(space24(), seed=1, unit_size=64)
        master.register_node("n1")
        unit = master.next_unit("n1")
        manual_clock.advance(20)  # past suspect_timeout=15
        assert master.detect_failures() == []
        assert master.nodes["n1"].state == "suspect"
        manual_clock.advance(50)  # past dead_timeout=60 in total
        reverted = master.detect_failures()
        assert reverted == [unit.unit_id]
        assert master.nodes["n1"].state == "dead"

    def test_reverted_unit_reassignable_with_attempt_count(self, master, manual_clock):
        master.create_operation(space24(), seed=1, unit_size=64)
        master.register_node("n1")
        unit = master.next_unit("n1")
        manual_clock.advance(120)
        master.detect_failures()
        master.register_node("n2")
        unit2 = master.next_unit("n2")
        assert unit2.unit_id == unit.unit_id
        assert unit2.attempt_count == 1

    def test_heartbeat_revives_suspect(self, master, manual_clock):
        master.register_node("n1")
        manual_clock.advance(20)
        master.detect_failures()
        assert master.nodes["n1"].state == "suspect"
        master.heartbeat("n1")
        assert master.nodes["n1"].state == "active"

    def test_dead_node_must_reregister(self, master, manual_clock):
        master.create_operation(space24(), seed=1)
        master.register_node("n1")
        manual_clock.advance(120)
        master.detect_failures()
        with pytest.raises(DeadNodeError):
            master.next_unit("n1")
        master.register_node("n1")  # fresh registration revives
        assert master.nodes["n1"].state == "active"

    def test_attempt_cap_parks_unit_as_failed(self, manual_clock):
        m = ScanMaster(
            MasterConfig(suspect_timeout=1, dead_timeout=2, attempt_cap=2),
            clock=manual_clock,
        )
        op = m.create_operation(space24(), seed=1, unit_size=256)
        for round_no in range(2):
            m.register_node("n1")
            assert m.next_unit("n1") is not None
            manual_clock.advance(10)
            m.detect_failures()
        status = m.status(op)
        assert status.failed == 1
        assert status.pending == 0
        assert not status.finished

    def test_stale_submission_after_reassignment_is_kept(self, master, manual_clock):
        """A failed node's partial work still counts when it arrives; the
        duplicate from the replacement node is archived downstream."""
        op = master.create_operation(space24(), seed=1, unit_size=256)
        master.register_node("n1")
        unit = master.next_unit("n1")
        manual_clock.advance(120)
        master.detect_failures()  # n1 dead, unit pending again
        master.register_node("n1")
        ack = master.submit_result("n1", unit.unit_id, [{"ip": "10.0.0.1"}])
        assert ack["duplicate"] is False
        assert master.status(op).completed == 1


class TestNoLoss:
    def test_units_always_in_exactly_one_state(self, master, manual_clock):
        op = master.create_operation(space24(), seed=1, unit_size=32)
        master.register_node("n1")
        master.register_node("n2")
        for _ in range(3):
            master.next_unit("n1")
            master.next_unit("n2")
        manual_clock.advance(120)
        master.detect_failures()
        status = master.status(op)
        assert (
            status.pending + status.assigned + status.completed + status.failed
            == status.total_units
        )
