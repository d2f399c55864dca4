"""JSON schemas (draft 2020-12) for the documents the command line emits."""

_ints = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_strip = {
    "type": "object",
    "required": ["A", "B", "C"],
    "properties": {"A": _ints, "B": _ints, "C": _ints},
    "additionalProperties": False,
}
_maximality = {"enum": ["optimal", "locally-maximal", "unknown"]}

GRAPH = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Graph",
    "type": "object",
    "required": ["n", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "edges": {"type": "array", "items": {**_ints, "minItems": 2, "maxItems": 2}},
        "labels": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

CERTIFICATE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Certificate",
    "type": "object",
    "required": ["kind", "vertices", "paths", "meta"],
    "properties": {
        "kind": {"enum": ["hole", "theta", "pyramid", "near-prism", "wheel", "extended-near-prism"]},
        "vertices": _ints,
        "paths": {"type": "array", "items": _ints},
        "meta": {"type": "object"},
    },
    "additionalProperties": False,
}

TREE_SYSTEM = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "TreeStripSystem",
    "type": "object",
    "required": ["system", "a", "b", "alpha", "beta", "maximality"],
    "properties": {
        "system": {
            "type": "object",
            "required": ["J", "Me", "Mu"],
            "properties": {
                "J": {"type": "array", "items": {**_ints, "minItems": 2, "maxItems": 2}},
                "Me": {"type": "array", "items": {"type": "array", "prefixItems": [_ints, _ints]}},
                "Mu": {"type": "array", "items": {"type": "array", "prefixItems": [{"type": "integer"}, _ints]}},
            },
        },
        "a": {"type": "integer"},
        "b": {"type": "integer"},
        "alpha": _ints,
        "beta": _ints,
        "maximality": _maximality,
    },
}

PYRAMID_SYSTEM = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "PyramidStripSystem",
    "type": "object",
    "required": ["apex", "strips", "maximality"],
    "properties": {
        "apex": {"type": "integer", "minimum": 0},
        "strips": {"type": "array", "items": _strip, "minItems": 3},
        "maximality": _maximality,
    },
    "additionalProperties": False,
}

DECOMPOSITION = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Decomposition",
    "type": "object",
    "required": ["system", "maximality", "nodes", "report"],
    "properties": {
        "system": {"anyOf": [{"type": "null"}, TREE_SYSTEM, PYRAMID_SYSTEM]},
        "maximality": _maximality,
        "nodes": {"type": "integer", "minimum": 0},
        "report": {"type": "object"},
    },
}

_count = {"type": "integer", "minimum": 0}
REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "VerificationReport",
    "type": "object",
    "required": ["suite", "spec", "instances_tested", "inapplicable", "passes", "fails", "budget_hits", "alarms",
                 "violations", "certificates", "certificates_verified", "mutation_probes", "mutations_caught",
                 "counters"],
    "properties": {
        "suite": {"type": "string"},
        "spec": {"type": "object"},
        "instances_tested": _count,
        "inapplicable": _count,
        "passes": _count,
        "fails": _count,
        "budget_hits": _count,
        "alarms": _count,
        "violations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["graph", "witness", "detail", "caveat"],
                "properties": {"graph": {"type": "string"}, "detail": {"type": "string"},
                               "caveat": {"type": "boolean"}},
            },
        },
        "certificates": _count,
        "certificates_verified": _count,
        "mutation_probes": _count,
        "mutations_caught": _count,
        "counters": {"type": "object", "additionalProperties": _count},
        "wall_time": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}

SCHEMAS = {
    "graph": GRAPH,
    "certificate": CERTIFICATE,
    "tree-system": TREE_SYSTEM,
    "pyramid-system": PYRAMID_SYSTEM,
    "decomposition": DECOMPOSITION,
    "report": REPORT,
}
