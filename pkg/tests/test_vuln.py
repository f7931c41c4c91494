import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reconsys.vuln import (
    Affected,
    CveEntry,
    CveIndex,
    VersionRange,
    bucket,
    load_nvd_feed,
    parse_banner,
    parse_version,
    service_severity,
    version_in_range,
)
from reconsys.vuln.matcher import VulnMatch


class TestBannerParsing:
    def test_apache_with_version(self):
        pv = parse_banner("Apache/2.2.34")
        assert pv.product == "apache_httpd"
        assert pv.version == "2.2.34"

    def test_apache_with_comment(self):
        pv = parse_banner("Apache/2.4.41 (Ubuntu)")
        assert pv.product == "apache_httpd"
        assert pv.version == "2.4.41"

    def test_iis(self):
        pv = parse_banner("Microsoft-IIS/6.0")
        assert pv.product == "iis"
        assert pv.version == "6.0"

    def test_nginx_without_version(self):
        pv = parse_banner("nginx")
        assert pv.product == "nginx"
        assert pv.version is None

    def test_ssh_ident_string(self):
        pv = parse_banner("SSH-2.0-OpenSSH_7.6p1 Ubuntu-4ubuntu0.3")
        assert pv.product == "openssh"
        assert pv.version == "7.6p1"
        assert pv.components == (7, 6)

    def test_unknown_banner_returns_none(self):
        assert parse_banner("TotallyCustomServer/9.9") is None
        assert parse_banner("") is None

    def test_version_component_parsing(self):
        assert parse_version("2.2.34") == (2, 2, 34)
        assert parse_version("8.2p1") == (8, 2)
        assert parse_version("weird") is None


class TestVersionRanges:
    def test_inclusive_containment(self):
        vr = VersionRange(start_including="2.2.0", end_including="2.2.99")
        assert version_in_range((2, 2, 34), vr)
        assert version_in_range((2, 2, 0), vr)
        assert version_in_range((2, 2, 99), vr)
        assert not version_in_range((2, 3, 0), vr)

    def test_exclusive_end_bound(self):
        vr = VersionRange(end_excluding="2.4.0")
        assert version_in_range((2, 3, 99), vr)
        assert not version_in_range((2, 4, 0), vr)

    def test_exclusive_start_bound(self):
        vr = VersionRange(start_excluding="1.0")
        assert not version_in_range((1, 0), vr)
        assert version_in_range((1, 0, 1), vr)

    def test_zero_padding_equivalence(self):
        vr = VersionRange(end_including="2.2")
        assert version_in_range((2, 2, 0), vr)  # 2.2.0 == 2.2
        assert not version_in_range((2, 2, 1), vr)

    def test_exact_version(self):
        vr = VersionRange(exact="6.0")
        assert version_in_range((6, 0), vr)
        assert not version_in_range((6, 1), vr)


class TestBuckets:
    @pytest.mark.parametrize(
        "score,want",
        [
            (9.0, "critical"),
            (10.0, "critical"),
            (8.9, "high"),
            (7.0, "high"),
            (6.9, "medium"),
            (4.0, "medium"),
            (3.9, "low"),
            (0.0, "low"),
        ],
    )
    def test_table_boundaries(self, score, want):
        assert bucket(score) == want

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            bucket(10.1)
        with pytest.raises(ValueError):
            bucket(-0.1)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=0.0, max_value=10.0, allow_nan=False))
    def test_every_score_maps_to_exactly_one_bucket(self, score):
        assert bucket(score) in ("critical", "high", "medium", "low")

    def test_low_matches_do_not_count_as_vulnerable(self):
        low = [VulnMatch("CVE-X", 3.9, "low")]
        assert service_severity(low) is None
        med = low + [VulnMatch("CVE-Y", 4.0, "medium")]
        assert service_severity(med) == "medium"

    def test_raising_score_never_lowers_service_severity(self):
        order = ["low", "medium", "high", "critical"]
        base = [VulnMatch("CVE-A", 5.0, "medium")]
        before = service_severity(base)
        raised = base + [VulnMatch("CVE-B", 9.5, "critical")]
        after = service_severity(raised)
        assert order.index(after) >= order.index(before)


def _synthetic_entries(rng: random.Random, n: int = 200) -> list[CveEntry]:
    entries = []
    for i in range(n):
        kind = rng.randrange(4)
        a = rng.randrange(0, 9)
        b = rng.randrange(0, 9)
        lo = f"{a}.{b}"
        hi = f"{a + rng.randrange(0, 3)}.{rng.randrange(0, 9)}"
        if kind == 0:
            vr = VersionRange(start_including=lo, end_including=hi)
        elif kind == 1:
            vr = VersionRange(start_excluding=lo, end_excluding=hi)
        elif kind == 2:
            vr = VersionRange(end_excluding=hi)
        else:
            vr = VersionRange(exact=lo)
        entries.append(
            CveEntry(
                cve_id=f"CVE-2097-{i:04d}",
                cvss_score=round(rng.uniform(0.0, 10.0), 1),
                cvss_version="3.1",
                affected=[Affected(product="prod_x", vendor=None, ranges=vr)],
            )
        )
    return entries


class TestMatcherOracle:
    def test_matches_all_pairs_brute_force(self):
        rng = random.Random(99)
        entries = _synthetic_entries(rng, 200)
        index = CveIndex(entries)
        versions = [
            f"{rng.randrange(0, 10)}.{rng.randrange(0, 10)}.{rng.randrange(0, 30)}"
            for _ in range(50)
        ]
        for vtext in versions:
            pv = _pv("prod_x", vtext)
            got = {m.cve_id for m in index.match(pv)}
            want = {
                e.cve_id
                for e in entries
                if version_in_range(parse_version(vtext), e.affected[0].ranges)
            }
            assert got == want, f"version {vtext}"

    def test_unknown_version_matches_nothing(self):
        index = CveIndex(_synthetic_entries(random.Random(1), 10))
        assert index.match(_pv("prod_x", None)) == []

    def test_unknown_product_matches_nothing(self):
        index = CveIndex(_synthetic_entries(random.Random(1), 10))
        assert index.match(_pv("prod_y", "1.0")) == []

    def test_matches_carry_permanent_potential_caveat(self):
        entries = [
            CveEntry(
                "CVE-2097-0001",
                9.8,
                "3.1",
                [Affected("prod_x", None, VersionRange(end_including="99.0"))],
            )
        ]
        matches = CveIndex(entries).match(_pv("prod_x", "1.0"))
        assert matches and all(m.potential for m in matches)


def _pv(product, version):
    from reconsys.vuln import ProductVersion

    return ProductVersion(product=product, version=version, raw_banner="x")


class TestFeedIngestion:
    def test_reduced_feed_parses(self):
        from importlib import resources

        with resources.as_file(
            resources.files("reconsys.data").joinpath("nvd_reduced.json")
        ) as path:
            entries = load_nvd_feed(path)
        by_id = {e.cve_id: e for e in entries}
        assert len(entries) == 6
        # v3 preferred over v2 when both present
        assert by_id["CVE-2099-0004"].cvss_version.startswith("3")
        assert by_id["CVE-2099-0004"].cvss_score == 7.5
        # v2-only entry falls back
        assert by_id["CVE-2099-0002"].cvss_version == "2.0"
        # nested children nodes are walked
        assert by_id["CVE-2099-0005"].affected[0].product == "openssh"

    def test_full_pipeline_example(self):
        from importlib import resources

        with resources.as_file(
            resources.files("reconsys.data").joinpath("nvd_reduced.json")
        ) as path:
            index = CveIndex(load_nvd_feed(path))
        pv = parse_banner("Apache/2.2.34")
        matches = index.match(pv)
        assert {m.cve_id for m in matches} == {"CVE-2099-0001", "CVE-2099-0002"}
        assert service_severity(matches) == "critical"
