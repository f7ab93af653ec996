"""Built-in suites, stored as config text so each doubles as an example config."""
from __future__ import annotations

from .config import WorkbenchConfig, parse_config

__all__ = ["SUITES", "suite_text", "load_suite"]

_RUNS = {}

_RUNS["divided-power-rbva"] = """
- title: integration on divided powers
  algebra: {name: divided-power, cutoff: 12}
  operators:
    P: {kind: rbo, constructor: divided-power-integration, weight: 0}
  checks:
    - {name: ordinary-rbo, operator: P, modes: [-14, 2]}
    - {name: divided-power-coefficients}
    - {name: homogeneity, operator: P}
    - {name: translation-invariance, operator: P, expect: fail, label: "P does not commute with d"}
"""

_RUNS["polynomial-rbva"] = """
- title: integration on polynomials
  algebra: {name: polynomial, cutoff: 12}
  operators:
    P: {kind: rbo, constructor: polynomial-integration, weight: 0}
  checks:
    - {name: ordinary-rbo, operator: P, modes: [-14, 2]}
    - {name: homogeneity, operator: P}
"""

_RUNS["heisenberg-integration"] = """
- title: rank-1 Heisenberg, integration along alpha
  algebra: {name: heisenberg, rank: 1, level: 1, cutoff: 6}
  operators:
    P: {kind: rbo, constructor: heisenberg-integration, weight: 0}
    d: {kind: derivation, constructor: mode, generator: 0, mode: 1, weight: 0, voa: false}
  checks:
    - {name: vertex-algebra-axioms, triples: [["a(-1) 1", "a(-1) 1", "a(-1) 1"], ["a(-1) 1", "a(-1) 1", "1"],
                                            ["a(-2) 1", "a(-1) 1", "a(-1)^2 1"], ["a(-1)^2 1", "a(-1) 1", "a(-1) 1"]]}
    - {name: voa-axioms}
    - {name: weak-local-rbo, operator: P}
    - {name: homogeneity, operator: P}
    - {name: ordinary-rbo, operator: P, expect: fail, label: "P(V) is not closed under the modes"}
    - {name: lambda-derivation, operator: d}
"""

_RUNS["l-minus-one-inverse"] = """
- title: inverse of L(-1) on its image
  algebra: {name: heisenberg, rank: 1, level: 1, cutoff: 6}
  operators:
    P: {kind: rbo, constructor: inverse-of-derivation, derivation: translation, weight: 0}
  checks:
    - {name: weak-local-rbo, operator: P}
    - {name: homogeneity, operator: P}
    - {name: translation-invariance, operator: P}
    - {name: ordinary-rbo, operator: P, expect: fail, label: "the image of L(-1)^-1 is not closed"}
"""

_RUNS["lattice-projection"] = """
- title: rank-1 lattice, projection onto nonnegative charge
  algebra: {name: lattice, N: 1, cutoff: 6}
  operators:
    P: {kind: rbo, constructor: projection, split: charge-nonnegative, weight: -1}
    Q: {kind: rbo, constructor: adjoint, of: P}
  checks:
    - {name: projection-rbo, operator: P}
    - {name: homogeneous-structure, operator: P}
    - {name: derived-structure, operator: P, sample: 12}
    - {name: star-formula, operator: P, sample: 20}
    - {name: adjoint-rbo, operator: P}
    - {name: modified-yang-baxter, operator: P}
"""

_RUNS["rescaled-projection"] = """
- title: lattice projection rescaled to weight 1
  algebra: {name: lattice, N: 1, cutoff: 6}
  operators:
    P: {kind: rbo, constructor: projection, split: charge-nonnegative, weight: 1}
  checks:
    - {name: homogeneous-structure, operator: P}
    - {name: rescaled-rbo, operator: P}
    - {name: adjoint-rbo, operator: P}
"""

_RUNS["non-closed-split"] = """
- title: a split whose first summand is not closed
  algebra: {name: heisenberg, rank: 1, level: 1, cutoff: 6}
  operators:
    P: {kind: rbo, constructor: projection, split: odd-mode-count, weight: -1}
  checks:
    - {name: projection-rbo, operator: P, expect: "raises:ClosureError"}
"""

_RUNS["tensor-projection"] = """
- title: divided powers tensor a Laurent window
  algebra: {name: tensor, left: {name: divided-power, cutoff: 4}, window: [-3, 3]}
  operators:
    P: {kind: rbo, constructor: tensor-lift, right: laurent-projection, weight: -1}
    S: {kind: rbo, constructor: projection, split: negative-exponent, weight: -1}
  checks:
    - {name: tensor-rbo, operator: P}
    - {name: projection-rbo, operator: S}
    - {name: operators-agree, operator: P, other: S}
"""

_RUNS["dendriform-from-rbva"] = """
- title: dendriform splitting of divided powers (weight 0)
  algebra: {name: divided-power, cutoff: 6}
  operators:
    P: {kind: rbo, constructor: divided-power-integration, weight: 0}
    T: {kind: dendriform, from: P}
  checks:
    - {name: dendriform-field, operator: T}
    - {name: dendriform-leibniz, operator: T}
    - {name: dendriform-jacobi, operator: T}
    - {name: sum-collapse, operator: T}
    - {name: dendriform-vertex, operator: T, expect: fail, label: "D-compatibility fails since P does not commute with d"}
- title: dendriform splitting of the lattice projection (weight -1)
  algebra: {name: lattice, N: 1, cutoff: 4}
  operators:
    P: {kind: rbo, constructor: projection, split: charge-nonnegative, weight: -1}
    T: {kind: dendriform, from: P}
  checks:
    - {name: dendriform-field, operator: T, sample: 40}
"""

_RUNS["dendriform-modules"] = """
- title: dendriform vertex structure on dual divided powers
  algebra: {name: dual-divided-power, cutoff: 4}
  operators:
    E: {kind: rbo, constructor: epsilon, weight: 0}
    T: {kind: dendriform, from: E}
  checks:
    - {name: ordinary-rbo, operator: E}
    - {name: dendriform-vertex, operator: T}
    - {name: dendriform-jacobi, operator: T}
    - {name: induced-module, operator: T}
    - {name: bimodule, operator: T}
    - {name: relative-rbo, operator: T}
"""

_RUNS["sign-automorphism"] = """
- title: sign automorphism of the Heisenberg VOA
  algebra: {name: heisenberg, rank: 1, level: 1, cutoff: 6}
  operators:
    d: {kind: derivation, constructor: sign-minus-identity, weight: 1}
  checks:
    - {name: lambda-derivation, operator: d}
    - {name: derivation-automorphism, operator: d}
"""

_RUNS["refutation-demo"] = """
- title: a known refutation, reported as a failure
  algebra: {name: heisenberg, rank: 1, level: 1, cutoff: 4}
  operators:
    P: {kind: rbo, constructor: heisenberg-integration, weight: 0}
  checks:
    - {name: ordinary-rbo, operator: P}
"""

_EXAMPLES = ["divided-power-rbva", "polynomial-rbva", "heisenberg-integration", "l-minus-one-inverse",
             "lattice-projection", "rescaled-projection", "non-closed-split", "tensor-projection",
             "dendriform-from-rbva", "dendriform-modules", "sign-automorphism"]

SUITES = {name: f"title: {name}\nseed: 0\nruns:\n{_RUNS[name].strip(chr(10))}\n" for name in _RUNS}
SUITES["all-examples"] = "title: all-examples\nseed: 0\nruns:\n" + "".join(
    _RUNS[n].strip("\n") + "\n" for n in _EXAMPLES)


def suite_text(name: str) -> str:
    return SUITES[name]


def load_suite(name: str) -> WorkbenchConfig:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known suites: {', '.join(sorted(SUITES))}")
    return parse_config(SUITES[name])
