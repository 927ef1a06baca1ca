import json

import pytest

from hemilab.building import FlagBuilding, JoinBuilding, ThinBuilding
from hemilab.metric import JoinPole, Pole
from hemilab.specs import (SCHEMA, SpecError, building_from_spec, expand_poles, normalize_job,
                           pole_from_spec, pole_label, spec_hash, write_cached_complex)


def test_building_specs():
    assert isinstance(building_from_spec({"family": "A", "n": 2, "q": 2}), FlagBuilding)
    assert isinstance(building_from_spec({"thin": {"family": "A", "n": 2}}), ThinBuilding)
    J = building_from_spec({"building": {"join": [{"thin": {"n": 1}}, {"n": 2, "q": 2}]}})
    assert isinstance(J, JoinBuilding)
    with pytest.raises(SpecError):
        building_from_spec({"family": "B", "n": 2, "q": 2})
    with pytest.raises(SpecError):
        building_from_spec({"foo": 1})


def test_spec_roundtrip(fano, hexagon):
    for B in (fano, hexagon):
        assert building_from_spec(B.spec()).complex == B.complex


def test_pole_specs(fano, s0_fano):
    assert isinstance(pole_from_spec(fano, "vertex:3"), Pole)
    x = pole_from_spec(fano, {"barycenter": [0, 7], "weights": ["1/3", "2/3"]})
    assert x.carrier == {0, 7}
    assert isinstance(pole_from_spec(s0_fano, "barycenter:0,2"), JoinPole)
    with pytest.raises(SpecError):
        pole_from_spec(fano, "edge:1")
    assert pole_label({"barycenter": [0, 7]}) == "barycenter:0,7"


def test_expand_poles(fano):
    assert len(expand_poles(fano, "vertices")) == 14
    assert len(expand_poles(fano, "edges")) == 21
    assert len(expand_poles(fano, "all")) == 35
    types = expand_poles(fano, "types")
    assert len(types) == 3 and "barycenter" in types[-1]


def test_normalize_job():
    job = normalize_job({"family": "A", "n": 2, "q": 2}, checks=["solomon-tits"], seed=4)
    assert job["schema"] == SCHEMA and job["seed"] == 4
    assert job["bounds"]["max_cells"] == 200000
    with pytest.raises(SpecError):
        normalize_job({"building": {"n": 2, "q": 2}, "checks": ["nope"]})
    with pytest.raises(SpecError):
        normalize_job({"schema": "other/v0", "building": {}})


def test_cache_key_is_content_hash(tmp_path, fano):
    spec = fano.spec()
    p1, hit1 = write_cached_complex(fano, spec, tmp_path)
    p2, hit2 = write_cached_complex(fano, json.loads(json.dumps(spec)), tmp_path)
    assert p1 == p2 and not hit1 and hit2
    assert spec_hash(spec) in p1.name
