import ipaddress

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reconsys.ipgen import (
    IndexPermutation,
    RangeOverlapError,
    TargetSpace,
    build_permutation,
    normalize_ranges,
    parse_range,
    permute,
    split_work_units,
)
from reconsys.ipgen import _feistel_py

try:
    from reconsys.ipgen import _feistel_cy
except ImportError:
    _feistel_cy = None

KERNELS = [pytest.param(_feistel_py, id="python")]
if _feistel_cy is not None:
    KERNELS.append(pytest.param(_feistel_cy, id="cython"))


# -- permutation -----------------------------------------------------------


class TestPermutation:
    def test_single_element_space_maps_to_itself(self):
        perm = build_permutation(seed=12345, space_size=1)
        assert perm.apply(0) == 0

    @pytest.mark.parametrize("kernel", KERNELS)
    @pytest.mark.parametrize("n", [2, 255, 256, 1000, 65536])
    def test_bijective_on_small_spaces(self, kernel, n):
        out = kernel.materialize(42, n, 4)
        assert sorted(out.tolist()) == list(range(n))

    @pytest.mark.parametrize("kernel", KERNELS)
    def test_bijective_on_non_power_of_two(self, kernel):
        n = 1_000_003
        out = kernel.materialize(42, n, 4)
        assert np.array_equal(np.sort(out), np.arange(n, dtype=np.uint64))

    def test_kernels_produce_identical_sequences(self):
        if _feistel_cy is None:
            pytest.skip("compiled kernel not built")
        for n in (1, 7, 255, 4096, 10_007):
            py = _feistel_py.materialize(99, n, 4)
            cy = _feistel_cy.materialize(99, n, 4)
            assert np.array_equal(py, cy)

    def test_rebuilding_reproduces_identical_sequence(self):
        a = build_permutation(7, 5000).materialize()
        b = build_permutation(7, 5000).materialize()
        assert np.array_equal(a, b)

    def test_inverse_table_consistency(self):
        perm = build_permutation(3, 2048)
        out = perm.materialize()
        inverse = {int(v): i for i, v in enumerate(out)}
        for i in range(2048):
            assert inverse[perm.apply(i)] == i

    def test_two_seeds_differ_in_most_positions(self):
        n = 65536
        a = build_permutation(1, n).materialize()
        b = build_permutation(2, n).materialize()
        differing = int(np.count_nonzero(a != b))
        assert differing >= 0.99 * n

    def test_out_of_range_index_rejected(self):
        perm = build_permutation(1, 100)
        with pytest.raises(ValueError):
            perm.apply(100)
        with pytest.raises(ValueError):
            perm.apply(-1)

    def test_zero_size_space_rejected(self):
        with pytest.raises(ValueError):
            build_permutation(1, 0)

    def test_permute_function_alias(self):
        perm = build_permutation(5, 10)
        assert permute(perm, 3) == perm.apply(3)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**64 - 1),
           n=st.integers(min_value=1, max_value=3000))
    def test_bijectivity_property(self, seed, n):
        out = _feistel_py.materialize(seed, n, 4)
        assert sorted(out.tolist()) == list(range(n))


# -- target space ------------------------------------------------------------


class TestTargetSpace:
    def test_parse_cidr_and_dashed_and_single(self):
        assert parse_range("10.0.0.0/30") == (
            int(ipaddress.IPv4Address("10.0.0.0")),
            int(ipaddress.IPv4Address("10.0.0.3")),
        )
        assert parse_range("10.0.0.1-10.0.0.9") == (
            int(ipaddress.IPv4Address("10.0.0.1")),
            int(ipaddress.IPv4Address("10.0.0.9")),
        )
        lo, hi = parse_range("192.168.1.5")
        assert lo == hi

    def test_reversed_dashed_range_rejected(self):
        with pytest.raises(ValueError):
            parse_range("10.0.0.9-10.0.0.1")

    def test_overlapping_ranges_are_an_error(self):
        with pytest.raises(RangeOverlapError):
            normalize_ranges([parse_range("10.0.0.0/24"), parse_range("10.0.0.128/25")])

    def test_adjacent_ranges_merge(self):
        merged = normalize_ranges(
            [parse_range("10.0.0.0/25"), parse_range("10.0.0.128/25")]
        )
        assert merged == (parse_range("10.0.0.0/24"),)

    def test_index_zero_is_first_address(self):
        space = TargetSpace.from_strings(["10.0.0.0-10.0.0.255"], 80, "http")
        assert space.index_to_target(0) == ("10.0.0.0", 80)

    def test_concatenation_order_across_ranges(self):
        space = TargetSpace.from_strings(
            ["10.0.0.0-10.0.0.3", "10.0.1.0-10.0.1.1"], 443, "https"
        )
        assert space.size == 6
        assert space.index_to_target(4) == ("10.0.1.0", 443)

    def test_round_trip_on_a_slash_24(self):
        space = TargetSpace.from_strings(["172.16.5.0/24"], 22, "ssh")
        for i in range(space.size):
            ip, _port = space.index_to_target(i)
            assert space.target_to_index(ip) == i

    def test_index_out_of_range(self):
        space = TargetSpace.from_strings(["10.0.0.0/30"], 80, "http")
        with pytest.raises(ValueError):
            space.index_to_target(4)

    def test_bad_port_rejected(self):
        with pytest.raises(ValueError):
            TargetSpace.from_strings(["10.0.0.0/24"], 0, "http")
        with pytest.raises(ValueError):
            TargetSpace.from_strings(["10.0.0.0/24"], 65536, "http")

    def test_private_scope_detection(self):
        assert TargetSpace.from_strings(["127.0.0.0/24"], 80, "http").is_private_scope()
        assert TargetSpace.from_strings(["10.1.0.0/16"], 80, "http").is_private_scope()
        assert not TargetSpace.from_strings(["8.8.8.0/24"], 80, "http").is_private_scope()
        # a dashed range leaking out of private space is public
        assert not TargetSpace.from_strings(
            ["172.16.0.0-172.32.0.0"], 80, "http"
        ).is_private_scope()


# -- work units ---------------------------------------------------------------


class TestWorkUnits:
    def _space(self, n: int) -> TargetSpace:
        first = int(ipaddress.IPv4Address("10.0.0.0"))
        last = first + n - 1
        return TargetSpace.from_strings(
            [f"10.0.0.0-{ipaddress.IPv4Address(last)}"], 80, "http"
        )

    def test_ten_by_four(self):
        units = split_work_units(self._space(10), 4, "op", "default")
        assert [(u.start_index, u.end_index) for u in units] == [(0, 4), (4, 8), (8, 10)]

    def test_exact_fit_single_unit(self):
        units = split_work_units(self._space(4), 4, "op", "default")
        assert [(u.start_index, u.end_index) for u in units] == [(0, 4)]

    def test_partition_covers_space_exactly_once(self):
        space = TargetSpace.from_strings(["10.0.0.0/16"], 80, "http")
        units = split_work_units(space, 1000, "op", "default")
        assert len(units) == 66
        covered = []
        for u in units:
            covered.extend(range(u.start_index, u.end_index))
        assert covered == list(range(65536))

    def test_unit_size_must_be_positive(self):
        with pytest.raises(ValueError):
            split_work_units(self._space(10), 0)
