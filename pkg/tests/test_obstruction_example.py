import json

import pytest

from ncdef.deformation import EquivalenceStatus, deformations_equivalent
from ncdef.linalg import GF, QQ
from ncdef.obstruction_example import ExampleData, run_obstruction_example
from ncdef.rep import IsoStatus
from ncdef.aobjects import is_isomorphic_aobjects

STEP_NAMES = ["end_N", "ext_groups", "bac_action", "algebras", "flatness", "theta_injective_mod_B",
              "theta_not_iso", "equivalent_deformations", "conclusion"]


@pytest.mark.parametrize("field", ["Q", "F:5", "F:7"])
def test_all_steps_pass(field):
    rep = run_obstruction_example(field)
    assert [s.name for s in rep.steps] == STEP_NAMES
    assert rep.ok and not rep.aborted and not rep.warnings


@pytest.mark.parametrize("field", ["F:2", "F:3"])
def test_small_fields_are_flagged(field):
    rep = run_obstruction_example(field)
    assert rep.warnings
    assert rep.steps


def test_report_is_json_serializable():
    d = run_obstruction_example("Q").to_dict()
    text = json.dumps(d, sort_keys=True)
    assert json.loads(text)["ok"] is True


@pytest.mark.parametrize("f", [QQ, GF(5)])
def test_theta_objects(f):
    D = ExampleData(f)
    zbu, _ = D.theta(D.bu)
    zv, _ = D.theta(D.vbar)
    assert is_isomorphic_aobjects(zbu, zv).status is IsoStatus.NOT_ISOMORPHIC
    d1 = D.deformation(D.vbar)
    d2 = D.deformation(D.add(D.vbar, D.bu))
    r = deformations_equivalent(d1, d2)
    assert r.status is EquivalenceStatus.EQUIVALENT
    assert deformations_equivalent(D.deformation(D.bu), d1).status is EquivalenceStatus.NOT_EQUIVALENT
