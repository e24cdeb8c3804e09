"""Order certificates for the graph classes with a constructive ordering."""

from .builders import order_bipartite_supergraph, order_multipartite, order_split, order_tree_bounded_degree
from .certificate import FORMULA_SCHEMES, SCHEMES, OrderCertificate, PreconditionError
from .traced import order_chordal, order_cograph, order_minor_free
from .verify import ClassReport, VerificationReport, check_class_conditions, verify_certificate

__all__ = [
    "FORMULA_SCHEMES",
    "SCHEMES",
    "ClassReport",
    "OrderCertificate",
    "PreconditionError",
    "VerificationReport",
    "check_class_conditions",
    "order_bipartite_supergraph",
    "order_chordal",
    "order_cograph",
    "order_minor_free",
    "order_multipartite",
    "order_split",
    "order_tree_bounded_degree",
    "verify_certificate",
]
