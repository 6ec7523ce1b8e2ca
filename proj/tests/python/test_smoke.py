import math

import _antieig as ae


def test_mu1_hermitian_closed_form():
    r = ae.mu1([[1, 0], [0, 4]])
    assert abs(r["mu1"] - 0.8) < 1e-9
    assert r["method"] == "hermitian_pd"
    assert abs(r["angle_rad"] - math.acos(0.8)) < 1e-9


def test_mu1_scalar_rotation():
    r = ae.mu1([[1j]])
    assert abs(r["mu1"]) < 1e-12
    assert abs(r["angle_rad"] - math.pi / 2) < 1e-12


def test_gamma_best_identity():
    r = ae.gamma_best([[1, 0], [0, 1]], p=4.0)
    assert abs(r["gamma_best"] - 1.0) < 1e-8
    assert r["verdict"]


def test_check_equivalence_agrees():
    r = ae.check_equivalence([[1, 0], [0, 4]], p=4.0)
    assert r["agree"]
    assert r["verdict_dissipativity"]


def test_p_range_diag_1_4():
    r = ae.p_range([[1, 0], [0, 4]])
    assert not r["empty"]
    assert abs(r["p_lower"] - 10.0 / 9.0) < 1e-6
    assert abs(r["p_upper"] - 10.0) < 1e-5


def test_kappa_window_reciprocal():
    cl, cr = ae.kappa_window(4.0)
    assert abs(cl * cr - 1.0) < 1e-9
    assert abs(cl - (7 - 4 * math.sqrt(3))) < 1e-10


def test_cone_test_threshold():
    assert ae.cone_test(1 + 1j, 6.0)
    assert not ae.cone_test(1 + 1j, 7.0)


def test_kernel_mass_identity():
    spec = ae.make_ou_spec(
        A=[[1.0, 0.0], [0.0, 1.0 + 0.5j]],
        B=[[0.2, 0.0], [0.0, 0.4]],
        S=[[0.0, -1.0], [1.0, 0.0]],
        d=2,
    )
    r = ae.mass_check(spec, [0.3, -0.2], 0.5, L=12.0, n=48)
    assert r["deviation"] < 1e-6
    assert abs(r["expected"][0][0] - math.exp(-0.1)) < 1e-12


def test_expm_skew_rotation():
    R = ae.expm_skew([[0.0, -1.0], [1.0, 0.0]], math.pi / 2)
    assert abs(R[0][0].real) < 1e-12
    assert abs(R[1][0].real - 1.0) < 1e-12


def test_structural_predicates():
    f = ae.structural_predicates([[0, 1], [0, 0]])
    assert not f["hermitian"]
    assert not f["normal"]
    assert not f["invertible"]
