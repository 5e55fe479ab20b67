"""Acceptance suite: one verdict line per criterion, at the stated sizes."""


from toricforms import lattice
from toricforms.verify import (
    check_segments_match_H,
    check_cone_sums_random,
    check_derivs_in_pairs,
    check_divisor_sum_roundtrip,
    check_r_plus_identity,
    check_hecke_equivariance,
    check_hecke_multiplicativity,
    check_hecke_symmetrization,
    check_relation_images,
    check_newform_membership,
    check_threads,
    dims,
    eta_product,
    inside_sweep,
    pair_span_report,
    random_symbols,
    sturm_bound,
)


def test_01_cusp_forms_are_pair_combinations(report):
    f = eta_product([(1, 3), (7, 3)], 40)
    g = eta_product([(1, 4), (5, 4)], 40)
    a = check_newform_membership(7, 3, f, 40)
    b = check_newform_membership(5, 4, g, 40)
    report(1, "eta newforms at (7,3) and (5,4) are exact pair combinations to q^40", a.member and b.member,
           f"{len(a.combination)} and {len(b.combination)} pairs used")


def test_02_boundary_segments_match_H(report):
    ok = check_segments_match_H([2, 3, 5, 7, 11, 13])
    subs = lattice.sublattices_index_p(2)
    segs = [s for S in subs for s in lattice.boundary_segments(S)]
    ok = ok and len(subs) == 3 and len(segs) == 4
    report(2, "boundary segments over index-p sublattices = H(p), p <= 13", ok, f"p=2: {len(subs)} lattices, {len(segs)} segments")


def test_03_r_plus_identity(report):
    cases = [(5, 3), (5, 4), (7, 3)]
    ok = all(check_r_plus_identity(l, k, 12) for l, k in cases)
    report(3, "R+ identity in the Manin quotient, D <= 12", ok, "(5,3) (5,4) (7,3)")


def test_04_mu_of_relations(report):
    cases = [(5, 3, 30), (5, 4, 30), (7, 3, 40)]
    ok = all(check_relation_images(l, k, n) and check_relation_images(l, k, n + 10) for l, k, n in cases)
    report(4, "mu of every three-term relation lies in span{tilde_s^(k), D tilde_s^(k-2)}", ok, "stable under +10 coefficients")


def test_05_hecke_equivariance(report):
    ok = True
    for l, k, p in [(5, 3, 2), (5, 3, 3), (7, 3, 2), (7, 3, 3)]:
        n = p * (sturm_bound(l, k) + 10)
        ok = ok and all(check_hecke_equivariance(l, k, p, w, n) for w in random_symbols(l, k, 10, seed=100 + p))
    report(5, "mu(T_p w) - T_p mu(eps w) in the Eisenstein-plus-derivative span", ok, "10 random w per (l,k,p)")


def test_06_derivatives_in_pairs(report):
    ok = check_derivs_in_pairs(5, 3, 30) and check_derivs_in_pairs(5, 4, 30)
    report(6, "D tilde_s^(k-2) lies in the quasimodular pair span", ok, "(5,3) (5,4)")


def test_07_cone_sums(report):
    report(7, "cone sums of 100 random even G are odd and match brute force", check_cone_sums_random(100, seed=7))


def test_08_divisor_sum_round_trip(report):
    report(8, "50 random odd h rebuilt from tilde_s decompositions to q^50", check_divisor_sum_roundtrip(50, 50, seed=8))


def test_09_hecke_on_symbols(report):
    ok = all(check_hecke_symmetrization(l, k, 20, seed=9) and check_hecke_multiplicativity(l, k, 20, seed=9) for l, k in [(5, 3), (7, 3)])
    report(9, "Hecke commutes with symmetrization; T2 T3 = T6 = T3 T2", ok, "20 random vectors")


def test_10_inside_cancellation(report):
    count, failures = inside_sweep([2, 3], 10, 5, 3)
    report(10, "Sigma_1..Sigma_4 cancel on every admissible input", count > 0 and not failures, f"{count} checks, {len(failures)} nonzero")


def test_11_threads(report):
    report(11, "Upsilon/Delta inverse and thread partition of I(D), D <= 30", check_threads(30))


def test_12_oracle_sanity(report):
    ok = dims(5, 3) == (4, 0) and dims(7, 3)[1] == 1 and dims(5, 4)[1] == 1
    ranks = []
    for l, k, n in [(5, 3, 20), (7, 3, 30), (5, 4, 30)]:
        r = pair_span_report(l, k, n)
        ranks.append(f"({l},{k}) rank {r.rank} in [{r.dim_s},{r.dim_m}]")
        ok = ok and r.verdict
    report(12, "dimension oracle and pair-span rank bounds, stable from the Sturm bound", ok, "; ".join(ranks))
