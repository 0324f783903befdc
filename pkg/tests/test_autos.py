"""Torus automorphism words: composition, powers, and order divisibility."""

import random

import pytest

from e1forge.autos import (
    AutoError,
    auto_order,
    canonical_torus_rep,
    compose,
    enumerate_torus,
    identity_mu_order,
    identity_word,
    is_identity,
    make_word,
    naive_power,
    random_word,
    torus_element_order,
    twisted_norm,
    verify_order_bound,
)


def test_identity_word_is_identity():
    for d, q, eps in [(3, 4, 1), (3, 2, -1), (4, 4, 1)]:
        assert is_identity(identity_word(d, q, eps))
        assert auto_order(identity_word(d, q, eps)) == 1


def test_canonical_rep_collapses_central_orbit():
    # scalar multiples of a diagonal share one canonical representative
    assert canonical_torus_rep((2, 3, 1), 4, 1) == canonical_torus_rep(
        (3, 1, 2), 4, 1
    )


def test_make_word_rejects_bad_torus_entries():
    with pytest.raises(AutoError):
        make_word(3, 2, -1, (2, 1, 1))  # violates a_i * a_{d+1-i}^q = 1
    with pytest.raises(AutoError):
        make_word(3, 4, 1, (0, 1, 1))


def test_compose_matches_naive_power():
    rng = random.Random(11)
    for _ in range(20):
        w = random_word(3, 4, 1, rng)
        assert compose(w, w) == naive_power(w, 2)


@pytest.mark.parametrize("d,q,epsilon", [(3, 4, 1), (3, 2, -1), (4, 4, 1)])
def test_twisted_norm_equals_naive(d, q, epsilon):
    rng = random.Random(0xBEEF)
    words = [random_word(d, q, epsilon, rng) for _ in range(40)]
    for w in words:
        for l in (1, 2, 3, 7, 24):
            assert twisted_norm(w, l) == naive_power(w, l)


def test_twisted_norm_random_words_all_l():
    # the acceptance sweep: 1000 random words, every l <= 24
    rng = random.Random(2024)
    checked = 0
    for _ in range(1000):
        d, q, epsilon = rng.choice([(3, 4, 1), (3, 2, -1), (2, 4, -1), (4, 2, 1)])
        w = random_word(d, q, epsilon, rng)
        l = rng.randrange(1, 25)
        assert twisted_norm(w, l) == naive_power(w, l)
        checked += 1
    assert checked == 1000


@pytest.mark.parametrize("d,q,epsilon", [(3, 4, 1), (3, 2, -1), (4, 4, 1)])
def test_order_bound_divisibility(d, q, epsilon):
    report = verify_order_bound(d, q, epsilon)
    assert report["ok"], report["violations"]
    assert report["checked"]["a"] > 0
    assert report["checked"]["b"] > 0
    if epsilon == -1:
        assert report["checked"]["c"] > 0


def test_order_bound_requires_central_threes():
    with pytest.raises(AutoError):
        verify_order_bound(3, 2, 1)  # q - eps = 1, no 3 divides it


def test_mu_order_values():
    # eps=+1: Z_2 x Z_f; eps=-1: Z_{2f} with iota folded to phi^f
    assert identity_mu_order((0, 0), 4, 1) == 1
    assert identity_mu_order((1, 0), 4, 1) == 2
    assert identity_mu_order((0, 1), 4, 1) == 2
    assert identity_mu_order((1, 1), 4, 1) == 2
    assert identity_mu_order((0, 1), 4, -1) == 4
    assert identity_mu_order((1, 0), 4, -1) == 2  # iota = phi^f, f = 2


def test_beta_order_parity_tracks_mu():
    # for odd-order t the order of ad_t o mu is even iff |mu| is even
    for t in enumerate_torus(3, 2, -1):
        if torus_element_order(t, 2, -1) % 2:
            for mu in [(0, b) for b in range(2)]:
                w = make_word(3, 2, -1, t, *mu)
                mu_ord = identity_mu_order(mu, 2, -1)
                if mu_ord % 2 == 0:
                    assert auto_order(w) % 2 == 0


def test_torus_enumeration_sizes():
    # eps=+1: (q-1)^d / (q-1) canonical reps; eps=-1: (q^2-1)^{d//2} * extra
    assert len(enumerate_torus(3, 4, 1)) == 9  # 27 diagonals / 3 scalars
    torus = enumerate_torus(3, 2, -1)
    # sigma-torus of GU_3(2): free entry in GF(4)*, middle in mu_3 => 9,
    # modulo the center mu_3
    assert len(torus) == 3
