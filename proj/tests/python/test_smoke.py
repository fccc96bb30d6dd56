import math
import os

import kfp


def pot(name):
    return os.path.join(os.environ["KFP_DATA_DIR"], name)


def test_log_weight_profile():
    assert abs(kfp.log_weight(1.0) - 2.0 / math.log(2.0)) < 1e-14
    assert abs(kfp.log_weight(10.0) - 11.0 / math.log(11.0)) < 1e-14
    assert abs(kfp.log_weight(math.e - 1.0) - math.e) < 1e-12


def test_check_reports_critical_pair():
    rep = kfp.check(pot("abstract_n1.pot"), resolution=5e-3)
    assert rep["holds"] is True
    assert len(rep["critical_points"]) == 2
    for q in rep["critical_points"]:
        assert abs(q[0]) < 1e-7
        assert abs(abs(q[1]) - 1.0) < 1e-7
    assert abs(rep["epsilon0"] - 2.0) < 1e-5


def test_check_flags_degenerate_direction():
    rep = kfp.check(pot("q1_fourth.pot"), resolution=5e-3)
    assert rep["holds"] is False
    assert len(rep["failures"]) > 0


def test_constants_quadratic_regime():
    rep = kfp.constants(pot("linear.pot"))
    pc = rep["potential_constants"]
    assert pc["A_V"] == 1.0
    assert abs(pc["B_V"] - 1.0 / math.log(2.0) ** 2) < 1e-12
    assert pc["hypothesis_nondegenerate"] is True


def test_verify_small_grid():
    rep = kfp.verify(pot("neg_q4_1d.pot"), nq=12, np=4, box=6.0)
    assert rep["inequality"] == "main"
    assert 1.0 <= rep["C_star"] < 1e6
    assert rep["cert_value_below"] < 0.0
