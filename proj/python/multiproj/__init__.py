"""Bi-level and multi-level norm-ball projections for structured sparsity."""

try:
    from . import _multiproj as _core  # installed layout
except ImportError:  # in-tree build: extension sits on sys.path directly
    import _multiproj as _core

bilevel_project = _core.bilevel_project
euclid_project_l1inf = _core.euclid_project_l1inf
gen_uniform_matrix = _core.gen_uniform_matrix
matrix_pq_norm = _core.matrix_pq_norm
multilevel_norm = _core.multilevel_norm
multilevel_project = _core.multilevel_project
project_l1 = _core.project_l1
project_l2 = _core.project_l2
project_linf = _core.project_linf
structured_sparsity = _core.structured_sparsity

__all__ = [
    "bilevel_project",
    "euclid_project_l1inf",
    "gen_uniform_matrix",
    "matrix_pq_norm",
    "multilevel_norm",
    "multilevel_project",
    "project_l1",
    "project_l2",
    "project_linf",
    "structured_sparsity",
]
