from fractions import Fraction

from django.conf import settings
from rest_framework import serializers

from graphcore.grammar import format_fraction


# ------------------------------------------------------------------------------------------------------
class FractionField(serializers.Field):
    """
    Exact rational written as ``p/q`` or as an integer. Floats are refused.
    """

    default_error_messages = {
        "invalid": "Expected an integer or a fraction p/q, got {value!r}.",
        "float": "Floats are not exact; write {value!r} as a fraction p/q.",
    }

    # -----------------------------------
    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail("invalid", value=data)
        if isinstance(data, float):
            self.fail("float", value=data)
        if isinstance(data, int):
            return Fraction(data)
        text = str(data).strip()
        if any(c in text for c in ".eE"):
            self.fail("float", value=data)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            self.fail("invalid", value=data)

    def to_representation(self, value):
        value = Fraction(value)
        return str(value.numerator) if value.denominator == 1 else format_fraction(value)


# ------------------------------------------------------------------------------------------------------
class GraphSerializer(serializers.Serializer):

    n = serializers.IntegerField()
    m = serializers.IntegerField(allow_null=True)
    v = serializers.IntegerField()
    h = serializers.IntegerField()
    edges = serializers.SerializerMethodField()
    degree = serializers.IntegerField()
    weight = serializers.IntegerField()
    loop_order = serializers.IntegerField()

    # -----------------------------------
    def get_edges(self, graph):
        def name(endpoint):
            return f"h{~endpoint + 1}" if endpoint < 0 else f"v{endpoint + 1}"

        return [[name(a), name(b)] for a, b in graph.edges]


# ------------------------------------------------------------------------------------------------------
class TermSerializer(serializers.Serializer):

    coef = FractionField()
    graph = GraphSerializer()


# ------------------------------------------------------------------------------------------------------
class CombinationSerializer(serializers.Serializer):
    """A graph combination in the symmetric basis, terms in canonical order."""

    n = serializers.IntegerField()
    m = serializers.IntegerField(allow_null=True)
    terms = serializers.SerializerMethodField()

    # -----------------------------------
    def get_terms(self, combination):
        return TermSerializer(
            [{"coef": coef, "graph": graph} for graph, coef in combination.terms()],
            many=True,
        ).data


# ------------------------------------------------------------------------------------------------------
class HomologyRowSerializer(serializers.Serializer):

    degree = serializers.IntegerField()
    loop = serializers.IntegerField()
    dim = serializers.IntegerField()


# ------------------------------------------------------------------------------------------------------
class HomologyTableSerializer(serializers.Serializer):

    complex = serializers.DictField(source="spec.as_dict")
    description = serializers.CharField(source="spec.describe")
    twist = serializers.CharField(source="spec.twist_label")
    window = serializers.DictField(source="window_info")
    tool_version = serializers.CharField()
    rows = HomologyRowSerializer(source="records", many=True)


# ------------------------------------------------------------------------------------------------------
class RunConfigSerializer(serializers.Serializer):
    """Common flags of every verb."""

    n = serializers.IntegerField(min_value=1, default=2)
    m = serializers.IntegerField(min_value=0, allow_null=True, default=None)
    valence_class = serializers.ChoiceField(choices=[1, 2, 3], default=1)
    lam = FractionField(default=Fraction(1))
    truncate_weight = serializers.IntegerField(min_value=0, allow_null=True, default=None)
    truncate_hairs = serializers.IntegerField(min_value=0, allow_null=True, default=None)
    max_vertices = serializers.IntegerField(min_value=0, allow_null=True, default=None)
    loops = serializers.IntegerField(min_value=0, allow_null=True, default=None)
    samples = serializers.IntegerField(min_value=1, default=1)
    seed = serializers.IntegerField(default=0)
    jobs = serializers.IntegerField(min_value=1, allow_null=True, default=None)
    emit = serializers.ChoiceField(choices=["text", "json"], default="text")
    out = serializers.CharField(allow_null=True, default=None)

    # -----------------------------------
    def validate_jobs(self, value):
        return value or settings.GRAPHCX["JOBS"]
