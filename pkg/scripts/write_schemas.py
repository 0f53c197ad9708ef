"""Write the JSON Schema documents for every CLI report into docs/schema/.

Each file is self-contained: the shared definitions are copied into its $defs.
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "docs" / "schema"
DRAFT = "https://json-schema.org/draft/2020-12/schema"

NUM = {"type": "number"}
INT = {"type": "integer"}
BOOL = {"type": "boolean"}
STR = {"type": "string"}


def ref(name):
    return {"$ref": f"#/$defs/{name}"}


def obj(props, required=None, extra=False):
    return {
        "type": "object",
        "properties": props,
        "required": sorted(props) if required is None else required,
        "additionalProperties": extra,
    }


def nullable(s):
    return {"anyOf": [s, {"type": "null"}]}


DEFS = {
    "rational": obj({"num": INT, "den": {"type": "integer", "not": {"const": 0}}}),
    "matrix": {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": NUM}},
    "algebra": obj({"tag": {"enum": ["Su2", "U2", "Su2PowerN", "U2PowerN"]}, "n": {"type": "integer", "minimum": 1}}),
    "form": obj(
        {
            "tag": {"enum": ["Su2TorsionFree", "U2", "Su2Su2", "Su2N", "U2N"]},
            "params": {
                "type": "object",
                "properties": {"xi": NUM, "eta": NUM, "xi33": NUM, "M": ref("matrix")},
                "additionalProperties": False,
            },
        }
    ),
    "automorphism": nullable(
        obj(
            {
                "algebra": ref("algebra"),
                "rotations": {"type": "array", "items": ref("matrix")},
                "center": nullable(ref("matrix")),
                "perm": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            }
        )
    ),
    "term": obj(
        {
            "monomial": {
                "type": "object",
                "patternProperties": {"^xi_[0-9]+_[0-9]+$": {"type": "integer", "minimum": 1}},
                "additionalProperties": False,
            },
            "coeff": ref("rational"),
        }
    ),
    "equation": obj(
        {
            "label": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 3, "maxItems": 3},
            "terms": {"type": "array", "items": ref("term")},
        }
    ),
    "laurent_term": obj({"p": INT, "q": INT, "re": ref("rational"), "im": ref("rational")}),
    "laurent": {"type": "array", "items": ref("laurent_term")},
    "check_report": obj(
        {
            "is_complex_structure": BOOL,
            "square_defect": NUM,
            "torsion_residual": NUM,
            "tolerance": {"type": "number", "exclusiveMinimum": 0},
        }
    ),
    "error": obj(
        {
            "error": obj(
                {"type": {"enum": ["off_manifold", "not_integrable"]}, "message": STR, "residual": NUM},
                required=["type", "message"],
            )
        }
    ),
}

TOL = {"type": "number", "exclusiveMinimum": 0}

REPORTS = {
    "gen-torsion": obj(
        {
            "algebra": ref("algebra"),
            "count": INT,
            "nonzero_count": INT,
            "equations": {"type": "array", "items": ref("equation")},
        }
    ),
    "check": obj({"algebra": ref("algebra"), **DEFS["check_report"]["properties"]}),
    "canonicalize": {
        "oneOf": [
            obj(
                {
                    "algebra": ref("algebra"),
                    "form": ref("form"),
                    "witness": ref("automorphism"),
                    "witness_matrix": ref("matrix"),
                    "residual": NUM,
                    "tolerance": TOL,
                }
            ),
            ref("error"),
        ]
    },
    "equivalent": obj(
        {
            "algebra": ref("algebra"),
            "a": ref("form"),
            "b": ref("form"),
            "equivalent": BOOL,
            "status": {"enum": ["equivalent", "not_equivalent", "inconclusive"]},
            "witness": ref("automorphism"),
            "residual": nullable(NUM),
            "tolerance": TOL,
            "detail": STR,
        }
    ),
    "sample-manifold": {
        "description": "One JSON object per line: a sample record, or the final summary.",
        "oneOf": [
            obj(
                {
                    "index": {"type": "integer", "minimum": 0},
                    "params": {"type": "object"},
                    "matrix": ref("matrix"),
                    "square_defect": NUM,
                    "torsion_residual": NUM,
                    "roundtrip_error": NUM,
                    "rank": nullable(INT),
                    "expected_rank": INT,
                    "tolerance": TOL,
                    "pass": BOOL,
                }
            ),
            obj(
                {
                    "summary": obj(
                        {
                            "family": {"enum": ["u2", "su2su2"]},
                            "count": INT,
                            "seed": INT,
                            "failures": INT,
                            "max_square_defect": NUM,
                            "max_torsion_residual": NUM,
                            "max_roundtrip_error": NUM,
                            "tolerance": TOL,
                            "pass": BOOL,
                        }
                    )
                }
            ),
        ],
    },
    "chart-verify": obj(
        {
            "target": {"enum": ["u2", "su2su2"]},
            "xi": NUM,
            "eta": nullable(NUM),
            "samples": INT,
            "seed": INT,
            "method": {"enum": ["mp", "float"]},
            "max_pde_residual": NUM,
            "pde_tolerance": TOL,
            "max_jacobian_rel_error": NUM,
            "jacobian_tolerance": TOL,
            "membership_failures": nullable(INT),
            "spot_check": nullable(
                obj(
                    {
                        "point": {"type": "array", "items": NUM},
                        "xi": NUM,
                        "value": NUM,
                        "expected": NUM,
                        "error": NUM,
                        "tolerance": TOL,
                    }
                )
            ),
            "pass": BOOL,
        }
    ),
    "rep-verify": obj(
        {
            "xi": ref("rational"),
            "pmax": INT,
            "qmax": INT,
            "identities": {
                "type": "array",
                "items": obj({"name": STR, "checked": INT, "failures": INT, "pass": BOOL}),
            },
            "subrep_depth": INT,
            "subrep": {
                "type": "array",
                "items": obj(
                    {
                        "q": INT,
                        "case": {"enum": [1, 2, 3]},
                        "label": STR,
                        "spans": {
                            "type": "array",
                            "items": obj({"label": STR, "kind": {"enum": ["finite", "up", "down"]}, "invariant": BOOL}),
                        },
                        "finite_windows_checked": INT,
                        "finite_windows_escaping": INT,
                        "finite_dimension": nullable(INT),
                        "agree": BOOL,
                    }
                ),
            },
            "pass": BOOL,
        }
    ),
    "extend": {
        "oneOf": [
            obj(
                {
                    "source": ref("algebra"),
                    "target": ref("algebra"),
                    "nu2": {"enum": [1, -1]},
                    "matrix": ref("matrix"),
                    "check": ref("check_report"),
                    "form": nullable(ref("form")),
                }
            ),
            ref("error"),
        ]
    },
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, body in REPORTS.items():
        doc = {"$schema": DRAFT, "title": f"licstruct {name} report", **body, "$defs": DEFS}
        path = OUT / f"{name}.schema.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(path.relative_to(OUT.parents[1]))


if __name__ == "__main__":
    main()
