__all__ = [
    "SimpleType",
    "SubDeriv",
    "NotDerivable",
    "decide_sub",
    "closure_oracle",
    "coerce",
    "inhabit_relevant",
    "encode_refinement_signature",
]


from .coerce import coerce, inhabit_relevant
from .decide import closure_oracle, decide_sub
from .models import NotDerivable, SimpleType, SubDeriv
from .refinement import encode_refinement_signature
