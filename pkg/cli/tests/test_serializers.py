from fractions import Fraction

import pytest
from django.conf import settings
from rest_framework import serializers

from cli.api.serializers import (
    CombinationSerializer,
    FractionField,
    GraphSerializer,
    HomologyTableSerializer,
    RunConfigSerializer,
)
from gcalg.algebra import tetrahedron
from hgcalg.elements import line
from homology.tables import compute_table
from homology.windows import ComplexSpec


# ---------------------------------------------------------------------------------------------------
class TestFractionField:
    """
    Testing Steps:
    1. Feed integers, fractions and floats to the field
    2. Check exact values come back and floats are refused
    """

    # ---------------------------------
    @pytest.mark.parametrize(
        "data,value",
        [(2, Fraction(2)), ("3/4", Fraction(3, 4)), (" -1/2 ", Fraction(-1, 2)), ("6/4", Fraction(3, 2))],
    )
    def test_exact_input(self, data, value):
        assert FractionField().to_internal_value(data) == value

    @pytest.mark.parametrize("data", [0.5, "0.5", "1e3", True, "abc", "1/0"])
    def test_rejected_input(self, data):
        with pytest.raises(serializers.ValidationError):
            FractionField().to_internal_value(data)

    def test_representation(self):
        field = FractionField()
        assert field.to_representation(Fraction(3, 4)) == "3/4"
        assert field.to_representation(Fraction(4, 2)) == "2"


# ---------------------------------------------------------------------------------------------------
class TestRunConfig:
    """
    Testing Steps:
    1. Validate the common flags of every verb
    2. Check defaults and the rejected values
    """

    # ---------------------------------
    def test_defaults(self):
        serializer = RunConfigSerializer(data={})
        assert serializer.is_valid(), serializer.errors
        config = serializer.validated_data
        assert config["n"] == 2
        assert config["m"] is None
        assert config["lam"] == Fraction(1)
        assert config["emit"] == "text"

    def test_jobs_default_from_settings(self):
        serializer = RunConfigSerializer(data={"jobs": None})
        assert serializer.is_valid(), serializer.errors
        assert serializer.validated_data["jobs"] == settings.GRAPHCX["JOBS"]

    def test_lambda_is_exact(self):
        serializer = RunConfigSerializer(data={"lam": "-1/2"})
        assert serializer.is_valid(), serializer.errors
        assert serializer.validated_data["lam"] == Fraction(-1, 2)

    @pytest.mark.parametrize(
        "data,field",
        [
            ({"valence_class": 4}, "valence_class"),
            ({"m": -1}, "m"),
            ({"n": 0}, "n"),
            ({"lam": "0.25"}, "lam"),
            ({"samples": 0}, "samples"),
            ({"emit": "yaml"}, "emit"),
        ],
    )
    def test_rejected(self, data, field):
        serializer = RunConfigSerializer(data=data)
        assert not serializer.is_valid()
        assert field in serializer.errors


# ---------------------------------------------------------------------------------------------------
class TestOutputSerializers:
    """
    Testing Steps:
    1. Serialize graphs, combinations and homology tables
    2. Check the JSON shapes the CLI emits
    """

    # ---------------------------------
    def test_graph(self):
        graph = line(2, 2).terms()[0][0]
        data = GraphSerializer(graph).data
        assert [sorted(edge) for edge in data["edges"]] == [["h1", "h2"]]
        assert (data["v"], data["h"], data["m"]) == (0, 2, 2)

    def test_combination(self):
        data = CombinationSerializer(tetrahedron(2)).data
        assert data["m"] is None
        assert len(data["terms"]) == 1
        term = data["terms"][0]
        assert term["coef"] in ("1", "-1")
        assert term["graph"]["v"] == 4
        assert term["graph"]["degree"] == 0
        assert term["graph"]["loop_order"] == 3

    def test_homology_table(self):
        table = compute_table(ComplexSpec("trt", arity=3))
        data = HomologyTableSerializer(table).data
        assert data["tool_version"] == settings.GRAPHCX["TOOL_VERSION"]
        assert data["complex"]["kind"] == "trt"
        assert {"degree": 0, "loop": 3, "dim": 2} in [dict(row) for row in data["rows"]]


# ---------------------------------------------------------------------------------------------------
# pytest cli/tests/test_serializers.py -v
