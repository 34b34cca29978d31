import threading
from fractions import Fraction
from itertools import permutations, product

import pytest

from probbell.moments import (
    DistributionError,
    DistributionSpec,
    MomentProvider,
    egf_truncation,
    joint_moment,
    make_provider,
    parse_distribution,
    shifted_joint_moment,
    sum_moment,
    clear_caches,
)

from conftest import r_partition_counts, brute_bell_number

HALF = Fraction(1, 2)


def atoms_of(text):
    """(value, probability) list for laws with finite support."""
    spec = parse_distribution(text)
    if spec.kind == "deterministic":
        return [(spec.params[0], Fraction(1))]
    if spec.kind == "bernoulli":
        p = spec.params[0]
        return [(Fraction(1), p), (Fraction(0), 1 - p)]
    return list(spec.params)


def brute_joint(text, k, a, l):
    """E[S_k^a prod Y_i^l_i] by summing over every outcome of (Y_1..Y_k)."""
    total = Fraction(0)
    for outcome in product(atoms_of(text), repeat=k):
        prob = Fraction(1)
        value = Fraction(1)
        s = sum((v for v, _ in outcome), Fraction(0))
        for (v, p), li in zip(outcome, l):
            prob *= p
            value *= v**li
        total += prob * value * s**a
    return total


FINITE = ["det:1", "det:-2/3", "bernoulli:1/2", "bernoulli:1/3", "discrete:(0,1/3);(2,2/3)",
          "discrete:(-1,1/4);(1/2,1/4);(3,1/2)"]


class TestParsing:
    def test_grammar(self):
        assert parse_distribution("det:1") == DistributionSpec("deterministic", (1,))
        assert parse_distribution("bernoulli:1/2").params == (HALF,)
        spec = parse_distribution("discrete:(0,1/3);(2,2/3)")
        assert spec.params == ((0, Fraction(1, 3)), (2, Fraction(2, 3)))
        assert str(spec) == "discrete:(0,1/3);(2,2/3)"
        assert parse_distribution("poisson:3/2").params == (Fraction(3, 2),)

    @pytest.mark.parametrize("text", FINITE + ["poisson:1"])
    def test_str_round_trip(self, text):
        assert str(parse_distribution(text)) == text

    @pytest.mark.parametrize(
        "bad",
        ["bernoulli:3/2", "bernoulli:-1", "poisson:-1", "discrete:(0,1/2);(1,1/3)",
         "discrete:(0,-1/2);(1,3/2)", "gamma:1", "det", "det:0.5", "discrete:0,1", "discrete:"],
    )
    def test_rejects(self, bad):
        with pytest.raises(DistributionError):
            parse_distribution(bad)


class TestProviders:
    def test_examples(self):
        assert make_provider("det:1").moment(5) == 1
        assert make_provider("bernoulli:1/2").moment(3) == HALF
        assert make_provider("poisson:1").moment(3) == 5

    @pytest.mark.parametrize("text", FINITE + ["poisson:1", "poisson:2/3"])
    def test_normalized(self, text):
        assert make_provider(text).moment(0) == 1

    def test_poisson_one_gives_bell_numbers(self):
        p = make_provider("poisson:1")
        for n in range(11):
            assert p.moment(n) == brute_bell_number(n)

    def test_poisson_touchard(self):
        # E[Y^n] = sum_k {n brace k} lam^k, Stirling numbers from enumeration
        lam = Fraction(2, 3)
        p = make_provider("poisson:2/3")
        for n in range(9):
            assert p.moment(n) == sum(c * lam**k for k, c in enumerate(r_partition_counts(n, 0)))

    def test_equal_specs_share_identity(self):
        assert make_provider("bernoulli:2/4") == make_provider("bernoulli:1/2")

    def test_custom_provider(self):
        class Uniform01(MomentProvider):
            name = "uniform{0,1,2}"

            def _moment(self, n):
                return Fraction(0**n + 1 + 2**n, 3)

        u = Uniform01()
        assert sum_moment(u, 1, 4) == u.moment(4)
        assert joint_moment(u, 2, 0, (0, 0)) == 1


class TestSumMoment:
    def test_examples(self):
        b = make_provider("bernoulli:1/2")
        assert sum_moment(b, 0, 3) == 0
        assert sum_moment(b, 5, 0) == 1
        assert sum_moment(b, 2, 2) == Fraction(3, 2)
        assert sum_moment(b, 0, 0) == 1

    @pytest.mark.parametrize("text", FINITE)
    def test_against_enumeration(self, text):
        p = make_provider(text)
        for k in range(4):
            for n in range(6):
                assert sum_moment(p, k, n) == brute_joint(text, k, n, (0,) * k)

    def test_single_summand(self, provider):
        for n in range(16):
            assert sum_moment(provider, 1, n) == provider.moment(n)

    def test_deterministic(self):
        c = Fraction(-3, 2)
        p = make_provider("det:-3/2")
        for k in range(6):
            for n in range(8):
                assert sum_moment(p, k, n) == (k * c) ** n

    def test_concurrent_fill(self):
        clear_caches()
        p = make_provider("discrete:(1,1/5);(3,4/5)")
        results = []

        def work():
            results.append([sum_moment(p, k, n) for k in range(5) for n in range(7)])

        threads = [threading.Thread(target=work) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert all(r == results[0] for r in results)


class TestJointMoment:
    def test_examples(self, provider):
        mu = provider.moment
        assert joint_moment(provider, 2, 0, (1, 1)) == mu(1) ** 2
        assert joint_moment(provider, 0, 0, ()) == 1
        assert joint_moment(provider, 0, 2, ()) == 0

    def test_bernoulli_worked(self):
        assert joint_moment(make_provider("bernoulli:1/2"), 2, 1, (1, 1)) == HALF

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            joint_moment(make_provider("det:1"), 2, 1, (1,))

    @pytest.mark.parametrize("text", FINITE)
    def test_against_enumeration(self, text):
        p = make_provider(text)
        for k in range(1, 4):
            for a in range(4):
                for l in product(range(3), repeat=k):
                    assert joint_moment(p, k, a, l) == brute_joint(text, k, a, l)

    def test_zero_exponents_is_sum_moment(self, provider):
        for k in range(5):
            for a in range(7):
                assert joint_moment(provider, k, a, (0,) * k) == sum_moment(provider, k, a)

    def test_permutation_symmetry(self, provider):
        for k in range(4):
            for l in product(range(4), repeat=k):
                for a in range(3):
                    base = joint_moment(provider, k, a, l)
                    assert all(joint_moment(provider, k, a, q) == base for q in permutations(l))

    @pytest.mark.parametrize("text", FINITE[2:])
    def test_shifted(self, text):
        p = make_provider(text)
        for r in range(3):
            for l in [(1,), (2, 1), (1, 1, 1)]:
                k = len(l)
                expected = Fraction(0)
                for outcome in product(atoms_of(text), repeat=k):
                    prob, val = Fraction(1), Fraction(1)
                    for (v, pr), li in zip(outcome, l):
                        prob *= pr
                        val *= v**li
                    s = sum(v for v, _ in outcome)
                    expected += prob * val * (s + r) ** 3
                assert shifted_joint_moment(p, k, 3, l, r) == expected


class TestEgf:
    def test_examples(self):
        assert egf_truncation(make_provider("det:1"), 2) == [1, 1, HALF]
        assert egf_truncation(make_provider("bernoulli:1/2"), 2) == [1, HALF, Fraction(1, 4)]
        assert egf_truncation(make_provider("poisson:1"), 0) == [1]
