import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robust_vrp.generator import GenSpec, generate
from robust_vrp.model import (
    Instance,
    InstanceError,
    MaxSuccess,
    MinCost,
    distance,
    instance_to_dict,
    load_instance,
    save_instance,
)


def test_reference_constants(ref):
    assert ref.demand[1] == 47
    assert ref.demand[8] == 36
    assert ref.success[0, 6] == 0.982
    assert ref.success[7, 8] == 0.920
    assert ref.demand[0] == 0
    assert np.all(np.diag(ref.success) == 1)
    assert ref.fleet_size == 2 and ref.capacity == 180
    assert tuple(ref.coords[0]) == (7, 47)


def test_reference_aggregate_demand(ref):
    assert ref.demand.sum() == 308
    assert ref.demand.sum() <= ref.fleet_size * ref.capacity


def test_distance_examples(ref):
    assert distance(ref, 0, 7) == 5.0
    assert distance(ref, 3, 4) == pytest.approx(math.sqrt(200), abs=1e-12)
    assert distance(ref, 5, 5) == 0


def test_distance_out_of_range(ref):
    with pytest.raises(IndexError):
        distance(ref, 0, 9)


def test_cost_matrix_rounds_per_arc(ref):
    assert ref.cost[3, 4] == 14.14
    assert generate(GenSpec(5, 2, 1)).cost_precision is None


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.data())
def test_distance_symmetry_and_triangle(seed, data):
    inst = generate(GenSpec(6, 2, seed))
    i, j, k = (data.draw(st.integers(0, 6)) for _ in range(3))
    assert distance(inst, i, j) == distance(inst, j, i)
    assert distance(inst, i, k) <= distance(inst, i, j) + distance(inst, j, k) + 1e-9


def test_roundtrip_reference(ref, tmp_path):
    path = tmp_path / "ref.json"
    save_instance(ref, path)
    assert load_instance(path) == ref


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**64 - 1))
def test_roundtrip_generated(tmp_path_factory, seed):
    inst = generate(GenSpec(100, 5, seed))
    path = tmp_path_factory.mktemp("rt") / "g.json"
    save_instance(inst, path)
    back = load_instance(path)
    assert back == inst
    assert np.array_equal(back.success, inst.success)


def test_upper_triangle_input(ref, tmp_path):
    data = instance_to_dict(ref)
    data["success"] = [row[i:] for i, row in enumerate(ref.success.tolist())]
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(data))
    assert load_instance(path) == ref


def _write(tmp_path, data):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    return path


def test_asymmetric_success_rejected(ref, tmp_path):
    data = instance_to_dict(ref)
    data["success"][1][2] = 0.937
    data["success"][2][1] = 0.936
    with pytest.raises(InstanceError, match="symmetric"):
        load_instance(_write(tmp_path, data))


def test_negative_demand_rejected(ref, tmp_path):
    data = instance_to_dict(ref)
    data["nodes"][3]["demand"] = -1
    with pytest.raises(InstanceError, match="negative demand at node 3"):
        load_instance(_write(tmp_path, data))


def test_probability_out_of_range_rejected(ref, tmp_path):
    data = instance_to_dict(ref)
    data["success"][0][1] = data["success"][1][0] = 1.2
    with pytest.raises(InstanceError, match="outside"):
        load_instance(_write(tmp_path, data))


def test_nan_rejected(ref, tmp_path):
    path = tmp_path / "nan.json"
    text = json.dumps(instance_to_dict(ref)).replace('"x": 7.0', '"x": NaN', 1)
    path.write_text(text)
    with pytest.raises(InstanceError, match="NaN"):
        load_instance(path)


def test_parse_error_has_location(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"nodes": [\n  {"id": 0,,}\n]}')
    with pytest.raises(InstanceError, match="line 2"):
        load_instance(path)


def test_schema_error_has_field_path(ref, tmp_path):
    data = instance_to_dict(ref)
    del data["fleet"]["capacity"]
    with pytest.raises(InstanceError, match="fleet"):
        load_instance(_write(tmp_path, data))


def test_node_ids_must_be_ordered(ref, tmp_path):
    data = instance_to_dict(ref)
    data["nodes"][1]["id"] = 5
    with pytest.raises(InstanceError, match="expected id 1"):
        load_instance(_write(tmp_path, data))


def test_unwritable_path(ref, tmp_path):
    with pytest.raises(OSError):
        save_instance(ref, tmp_path / "missing-dir" / "x.json")


def test_instance_is_read_only(ref):
    with pytest.raises(ValueError):
        ref.success[0, 1] = 0.5


def test_depot_demand_must_be_zero():
    with pytest.raises(InstanceError, match="depot"):
        Instance(coords=[(0, 0), (1, 1)], demand=[1, 2], fleet_size=1, capacity=5, success=np.ones((2, 2)))


def test_objective_spec_ranges():
    with pytest.raises(ValueError):
        MinCost(1.5)
    with pytest.raises(ValueError):
        MaxSuccess(-1)
