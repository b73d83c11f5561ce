import random

import pytest

from growthlab.arith import primes_up_to
from growthlab.groups import (
    NilpotentGf,
    SemidirectFgAbelian,
    WreathCyclic,
    ZkByZ,
    asymptotic_leading,
    der_count,
    growth_table,
    max_subgroups,
    mdeg,
)
from growthlab.modules import MatrixAction, Presented


def _ma(k, actions, torsion=(), group_action=True):
    return MatrixAction(k=k, torsion=tuple(torsion), actions=tuple(
        tuple(tuple(r) for r in a) for a in actions
    ), group_action=group_action)


CYCLE3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
I2 = [[1, 0], [0, 1]]


def test_wreath_values():
    g = WreathCyclic(3)
    # p=3: 4; p≡1 mod 3: 2p+1; p≡2 mod 3: 1 at p and p^2 at p^2; 0 elsewhere
    expected = {
        2: 1, 3: 4, 4: 4, 5: 1, 7: 15, 8: 0, 9: 0, 11: 1,
        25: 25, 27: 0, 121: 121, 31: 63, 13: 27,
    }
    for n, v in expected.items():
        assert max_subgroups(g, n) == v, n
    assert max_subgroups(g, 6) == 0
    assert mdeg(g).value == 1
    assert mdeg(g).exactness == "upper-bound"


def test_wreath_expand():
    g = WreathCyclic(3).expand()
    assert isinstance(g, SemidirectFgAbelian)
    assert g.module.k == 3
    assert g.acting_rank == 0 and g.acting_torsion == (3,)


def test_zk_by_z():
    g = ZkByZ(_ma(3, [CYCLE3]))
    assert max_subgroups(g, 7) == 22  # 1 + 7*3
    assert max_subgroups(g, 2) == 3  # 1 + 2*1
    assert max_subgroups(g, 4) == 4  # 0 + 4*1 (one F_4 point)
    m = mdeg(g)
    assert m.value == 1 and m.exactness == "exact"


def test_zk_by_z_identity_vs_cycle():
    # finite-index contrast: Z^k x Z (trivial action) has mdeg k,
    # the k-cycle semidirect product has mdeg 1
    for k in (2, 3, 4):
        ident = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        cyc = [[1 if i == (j + 1) % k else 0 for j in range(k)] for i in range(k)]
        assert mdeg(ZkByZ(_ma(k, [ident]))).value == k
        assert mdeg(ZkByZ(_ma(k, [cyc]))).value == 1


def test_zk_by_z_consistency_random():
    # m_p(G) = 1 + p * m_p(N) for 10 random unimodular actions
    rng = random.Random(7)
    from growthlab.modules import count_max_submodules

    for _ in range(10):
        k = rng.randint(2, 3)
        A = _random_unimodular(rng, k)
        m = _ma(k, [A])
        g = ZkByZ(m)
        for p in (2, 3, 5, 7, 11):
            assert max_subgroups(g, p) == 1 + p * count_max_submodules(m, p)


def _random_unimodular(rng, n):
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for k in range(n):
            M[i][k] += c * M[j][k]
    return M


def test_asymptotic_leading():
    g = ZkByZ(_ma(3, [CYCLE3]))
    rho1, d = asymptotic_leading(g)
    assert (rho1, d) == (3, 1)
    ident = ZkByZ(_ma(2, [I2]))
    assert asymptotic_leading(ident) == (1, 2)


def test_der_count():
    assert der_count(0, (3,), 7, trivial=True) == 1  # 3 not divisible by 7
    assert der_count(0, (3,), 3, trivial=True) == 3
    assert der_count(1, (), 5, trivial=True) == 5
    assert der_count(0, (3,), 99, trivial=False) == 99
    with pytest.raises(ValueError):
        der_count(0, (3,), 6, trivial=True)


def test_semidirect_validation():
    # acting tuple length must match number of module actions
    with pytest.raises(ValueError):
        SemidirectFgAbelian(module=_ma(2, [I2]), acting_rank=0, acting_torsion=(3, 3))
    # torsion action must have the right order
    with pytest.raises(ValueError):
        SemidirectFgAbelian(
            module=_ma(3, [CYCLE3]), acting_rank=0, acting_torsion=(2,)
        )
    # this one is fine: 3-cycle has order 3
    SemidirectFgAbelian(module=_ma(3, [CYCLE3]), acting_rank=0, acting_torsion=(3,))


def test_nilpotent_gf():
    # Heisenberg: ell = 2, f_{12} = (1,)
    h = NilpotentGf(ell=2, f_vectors={(1, 2): (1,)})
    for p in (2, 3, 5, 7, 11):
        assert max_subgroups(h, p) == p + 1
    assert max_subgroups(h, 4) == 0
    assert max_subgroups(h, 6) == 0
    assert mdeg(h).value == 1
    # trivial f: mdeg = ell + C(ell,2) - 1
    for ell in (2, 3):
        triv = NilpotentGf(ell=ell, f_vectors={})
        assert mdeg(triv).value == ell + ell * (ell - 1) // 2 - 1


def test_growth_table():
    g = WreathCyclic(3)
    rep = growth_table(g, 10)
    rows = {r.n: r for r in rep.rows}
    assert set(rows) == {2, 3, 4, 5, 7, 8, 9}
    assert rows[7].count == 15
    assert rows[7].mtriv == 1 and rows[7].mnontriv == 2
    assert rep.mdeg.value == 1


def test_growth_table_module():
    m = Presented(gens=1, relations=(((0,),),))
    rep = growth_table(m, 5)
    rows = {r.n: r.count for r in rep.rows}
    assert rows == {2: 2, 3: 3, 4: 1, 5: 5}
    assert rep.growth_type is not None
    assert str(rep.growth_type) == "n^1"


def test_growth_table_z2():
    # Z^2 with x acting as zero: relations x*e1, x*e2
    m = Presented(gens=2, relations=(((0, 1), (0,)), ((0,), (0, 1))))
    rep = growth_table(m, 5)
    rows = {r.n: r.count for r in rep.rows}
    assert rows[2] == 3 and rows[3] == 4 and rows[4] == 0 and rows[5] == 6
