import copy
import json

import pytest

from adelic_qft.model import (PANEL, ModelValidationError, P1Model, TabulatedModel, export_table,
                              tabulated_model, validate_model)
from adelic_qft.p1 import INF
from adelic_qft.suites import corrupted_tables

SMALL = (0, 1, 2, INF)


@pytest.fixture(scope="module")
def table():
    return export_table(P1Model(), SMALL, max_order=3, window=12)


def test_p1_model_examples(model):
    assert model.eta_const(2, 1, 1) == 1
    assert model.prime_const(0, 1) == 1
    assert model.prime_const(1, 0) == -1
    assert model.eta_const(0, 1, INF) == 0
    assert model.genus == 0
    assert model.special_divisor.is_zero()


def test_p1_model_validates(model):
    assert validate_model(model, PANEL, 4) == []


def test_tabulated_round_trip(table, model):
    tab = TabulatedModel(json.loads(json.dumps(table)))
    for P in SMALL:
        for Q in SMALL:
            assert tab.prime_const(P, Q) == model.prime_const(P, Q)
            for n in (1, 2, 3):
                assert tab.eta_const(P, n, Q) == model.eta_const(P, n, Q)
                assert tab.eta_expansion(P, n, Q, 8).agrees_with(model.eta_expansion(P, n, Q, 8))
        for n in (1, 2, 3):
            assert tab.u_expansion(P, n, 8).agrees_with(model.u_expansion(P, n, 8))


def test_tabulated_loaders(table, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(table))
    assert tabulated_model(str(path)).points == tuple(sorted(SMALL, key=lambda P: (P is INF, 0 if P is INF else P)))
    assert tabulated_model(json.dumps(table)).precision == 12
    assert tabulated_model(table).max_order == 3


@pytest.mark.parametrize("kind", ["antisymmetry", "duality", "reciprocity"])
def test_corruption_rejected(kind):
    base = export_table(P1Model(), SMALL, max_order=3, window=12)
    bad = corrupted_tables(base)[kind]
    with pytest.raises(ModelValidationError) as exc:
        TabulatedModel(bad)
    assert any(v.startswith(kind) for v in exc.value.violations)


def test_missing_entries(table):
    bad = copy.deepcopy(table)
    del bad["eta"]["0"]["2"]
    with pytest.raises(ModelValidationError) as exc:
        TabulatedModel(bad)
    assert any("missing entry eta/0/2" in v for v in exc.value.violations)
    bad = copy.deepcopy(table)
    del bad["c"]
    with pytest.raises(ModelValidationError):
        TabulatedModel(bad)


def test_untabulated_query(table):
    tab = TabulatedModel(table)
    with pytest.raises(KeyError):
        tab.prime_const(0, 5)
