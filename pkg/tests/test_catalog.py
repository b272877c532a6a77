import itertools
import time
from fractions import Fraction

import pytest

from mslaw.catalog import (
    BaseChoice, Family, Verdict, default_entries, distinguish, emptiness_suite,
    expected_signature, instantiate, invariants, parse_params, seeded_checks, verify_entry,
)
from mslaw.cochain import QuadCocycle, check_ZQplus, sigma
from mslaw.errors import DomainError, UsageError
from mslaw.linalg import Matrix, signature
from mslaw.quadext import build_standard_model

F = Fraction


class TestInstantiate:
    def test_dim6_default(self):
        e = instantiate(Family.DIM6_DIAG, {"a": -3, "b": 1, "c": 2})
        assert e.pair.Dl == Matrix.diag(-3, 1, 2)
        assert e.pair.a_dim == 0
        assert e.cocycle == QuadCocycle.zero(3, 0).replace(gamma=sigma(3, 1, 2, 3))

    def test_w2(self):
        e = instantiate("dim8-w2", {"s": 1})
        assert e.pair.Dl == Matrix.diag(-1, 2, -3)
        assert e.pair.a_gram == Matrix([[0, 1], [1, 0]])
        assert e.pair.Da == Matrix.diag(1, -1)
        alpha = sigma(3, 1, 2).tensor((1, 0)) + sigma(3, 2, 3).tensor((0, 1))
        assert e.cocycle.alpha == alpha
        assert e.cocycle.gamma.is_zero() and e.cocycle.epsilon.is_zero()
        assert e.cocycle.delta == sigma(3, 1).tensor((0, 1))

    def test_constraint_violation(self):
        with pytest.raises(DomainError, match=r"a\+b\+c must be 0"):
            instantiate("dim6-diag", {"a": 1, "b": 1, "c": 1})

    @pytest.mark.parametrize("family, params, message", [
        ("dim6-diag", {"a": -2, "b": 0, "c": 2}, "nonzero"),
        ("dim6-diag", {"a": 1, "b": -3, "c": 2}, "a <= b <= c"),
        ("dim8-w1", {"e": 1}, "e must avoid"),
        ("dim8-w2", {"s": -1}, "s must be positive"),
        ("dim8-w5", {"sign": 2}, "sign"),
        ("dim6-jordan", {"b": 0}, "b must be nonzero"),
    ])
    def test_other_constraints(self, family, params, message):
        with pytest.raises(DomainError, match=message):
            instantiate(family, params)

    def test_unknown_parameter_and_family(self):
        with pytest.raises(UsageError):
            instantiate("dim6-diag", {"z": 1})
        with pytest.raises(UsageError):
            instantiate("dim9")

    def test_parse_params(self):
        assert parse_params("a=-3, b=1/2,c=5/2") == {"a": -3, "b": F(1, 2), "c": F(5, 2)}
        assert parse_params(None) == {}
        with pytest.raises(UsageError):
            parse_params("a")
        with pytest.raises(UsageError):
            parse_params("a=x")

    def test_family_glob(self):
        assert [f.value for f in Family.matching("dim6-*")] == \
            ["dim6-diag", "dim6-jordan", "dim6-complex"]
        with pytest.raises(UsageError):
            Family.matching("nothing*")

    def test_signed_variants(self):
        for fam in ("dim8-w4", "dim8-w5", "dim8-w6", "dim8-w7", "dim8-w8"):
            e = instantiate(fam, {"sign": -1})
            assert all(line.ok for line in verify_entry(e)), fam


class TestVerifyEntry:
    def test_all_defaults_pass(self, catalog):
        assert len(catalog) == len(Family)
        for e in catalog:
            lines = verify_entry(e) + seeded_checks(e, 1)
            failed = [str(x) for x in lines if not x.ok]
            assert not failed, failed

    def test_dim6_details(self):
        e = instantiate("dim6-diag")
        lines = {x.check: x for x in verify_entry(e)}
        assert lines["signature"].detail == "(3,3)"
        sm = build_standard_model(e.pair, e.cocycle)
        assert invariants(e).canonical_ideal_dim == 3
        assert sm.dim == 6

    def test_index3(self):
        e = instantiate("idx3-dim8", {"b": 1, "s": 1})
        lines = {x.check: x for x in verify_entry(e)}
        assert all(x.ok for x in lines.values())
        assert lines["index-3"].ok and lines["signature"].detail == "(3,5)"

    def test_tampered_w2(self):
        e = instantiate("dim8-w2")
        tampered = type(e)(e.family, e.params, e.pair, e.cocycle.replace(epsilon=sigma(3, 1, 2)))
        result = check_ZQplus(e.pair, tampered.cocycle)
        assert not result
        assert "D°_s ε ≠ 0" in result.failures
        lines = verify_entry(tampered)
        cocycle_line = next(x for x in lines if x.check == "cocycle")
        assert not cocycle_line.ok and "D°_s ε" in cocycle_line.detail
        assert not next(x for x in lines if x.check == "standard-model").ok

    def test_expected_signatures(self, catalog):
        for e in catalog:
            neg, pos, _ = signature(build_standard_model(e.pair, e.cocycle).model.gram)
            assert (neg, pos) == expected_signature(e.family)

    def test_index3_entries(self):
        for b, s in ((1, 1), (2, 1), (-1, 3), (F(1, 2), F(5, 2))):
            e = instantiate("idx3-dim8", {"b": b, "s": s})
            assert invariants(e).signature[0] == 3

    def test_timing(self):
        start = time.perf_counter()
        for e in default_entries("dim6-*"):
            t0 = time.perf_counter()
            assert all(x.ok for x in verify_entry(e))
            assert time.perf_counter() - t0 < 1.0
        t0 = time.perf_counter()
        for e in default_entries("dim8-*"):
            assert all(x.ok for x in verify_entry(e))
        assert time.perf_counter() - t0 < 2.0
        assert time.perf_counter() - start < 3.0


class TestDistinguish:
    def test_examples(self):
        e1 = instantiate("dim6-diag")
        e2 = instantiate("dim6-diag", {"a": -5, "b": 2, "c": 3})
        assert distinguish(e1, e2) is Verdict.DISTINCT
        assert distinguish(e1, e1) is Verdict.UNKNOWN
        assert distinguish(e1, instantiate("dim8-w1")) is Verdict.DISTINCT

    def test_normalised_grid(self):
        # c = 1, a = -1 - b, and a <= b <= c forces -1/2 <= b <= 1
        bs = [F(-1, 2), F(-1, 3), F(-1, 4), F(-1, 5), F(1, 5), F(1, 4), F(1, 3), F(1, 2),
              F(2, 3), F(3, 4), F(1)]
        entries = [instantiate("dim6-diag", {"a": -1 - b, "b": b, "c": 1}) for b in bs]
        assert len(entries) >= 10
        vecs = [invariants(e) for e in entries]
        for (i, e1), (j, e2) in itertools.combinations(enumerate(entries), 2):
            assert distinguish(e1, e2) is Verdict.DISTINCT
            assert vecs[i].derivation_charpoly != vecs[j].derivation_charpoly

    def test_dim6_families_share_algebra(self):
        models = [build_standard_model(e.pair, e.cocycle) for e in default_entries("dim6-*")]
        first = models[0].model
        for sm in models[1:]:
            assert sm.model.algebra.structure == first.algebra.structure
            assert sm.model.gram == first.gram
        assert len({sm.derivation for sm in models}) == len(models)


class TestEmptiness:
    @pytest.mark.parametrize("choice", list(BaseChoice))
    def test_no_balanced_samples(self, choice):
        t0 = time.perf_counter()
        report = emptiness_suite(choice, 100, seed=1)
        assert time.perf_counter() - t0 < 5.0
        assert report.balanced == 0 and report.ok
        assert report.samples == 100
        assert report.nonzero_cocycles > 0
        assert report.lines()[0].startswith("PASS")

    def test_deterministic(self):
        assert emptiness_suite("h3", 10, seed=7) == emptiness_suite("h3", 10, seed=7)

    def test_bad_arguments(self):
        with pytest.raises(UsageError):
            emptiness_suite("r3", 10)
        with pytest.raises(UsageError):
            emptiness_suite("r1", 0)
