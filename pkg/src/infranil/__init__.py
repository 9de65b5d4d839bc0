"""Exact Nielsen/Lefschetz invariants, zeta functions and homotopy minimal periods
for affine self-maps of infra-nilmanifolds."""

from .cohomology import (CohomologySpectrum, LieAlgebraData, cohomology_action, lefschetz_numbers,
                         lefschetz_zeta, torus_cohomology, validate_lie_algebra)
from .document import InputDocument, parse_input, render_input
from .errors import InfranilError
from .exactalg import Poly, RationalFunction, RationalMatrix
from .hper import HPerBoundTrace, HPerReport, ablss_certify, hper_bound, hper_report, nilpotent_shortcut
from .nielsen import (ExponentialSum, HolonomyData, MapData, exponential_sum_form,
                      fit_exponential_sum, nielsen_number, nielsen_sequence, nielsen_zeta_from_sum,
                      nielsen_zeta_from_table, reidemeister_status)
from .spectra import SpectralProfile, asymptotic_nielsen, classify, wedge_spectral_radius

__version__ = "0.1.0"
