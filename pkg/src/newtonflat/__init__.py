"""Exact Newton-polyhedral invariants and curve contact orders of real hypersurface germs."""
from .classify import ClassificationReport, classify
from .corpus import CORPUS, run_corpus
from .curves import (CurveJet, compose, compose_S, contact_order, curve, extract_S, radius_verdict,
                     tangency_witness, type_search)
from .faces import is_canonical, nondegeneracy_verdict, type_if_canonical
from .gaussian import GaussianRational, gq
from .hermitian import HermitianJet, build_jet, pure_mixed_split, squared_modulus, vanishing_order
from .newton import compact_faces, hull, is_convenient, is_slab_form, rho1, support
from .parsing import parse, parse_curve, print_jet, recognize_form
from .report import emit_report
from .values import AtLeast, Infinite

__version__ = "0.1.0"
