"""Exact invariants of link diagrams, intersection forms, handle complexes
and Legendrian fronts."""

from .errors import DiagramError, FormError, InvariantViolation, KirbyCalcError
from .laurent import LaurentPoly
from .forms import (SymmetricForm, blow, characteristic_report, classify_indefinite_unimodular,
                    direct_sum, form_invariants, handle_slide, obstruction_report,
                    orthogonal_complement, recognise_e8, standard_form, verify_congruence)
from .linkdiag import (FramedLink, OrientedLinkDiagram, braid_closure, connected_sum,
                       crossing_signs, linking_matrix, linking_number, parse_pd,
                       reverse_component)
from .handles import (HandleComplex, TwoHandle, homology_summary, intersection_form_of_complex,
                      pi1_presentation)
from .alexander import alexander_polynomial, fox_milnor_test, knot_determinant, kronecker_factor
from .legendrian import (OrientedFront, classical_invariants, front_to_pd, genus_bounds,
                         stabilize, stein_trace)

__version__ = "0.1.0"
