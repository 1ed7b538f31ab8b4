"""Exact information complexity and (s,t)-weak tractability classification."""

from .classify import (SweepGrid, classify, hierarchy_relations, portfolio, sweep,
                       uwt_probe, weak_tractability)
from .errors import (BudgetExceeded, InadmissibleCell, InfiniteCount, InfiniteMultiplicity,
                     InfiniteTrace, SpecError, StweakError, TieWarning, UnsupportedDimension)
from .hilbert import Criterion, GeneralProblem, STParams, info_complexity
from .integration import IntegrationBound, Variant
from .kernels import BACKEND
from .sobolev import Norm, SobolevProblem, approx_number, sobolev_complexity
from .spectra import (INFINITE, DecayClass, DecayKind, EigenSeq, Explicit, FiniteRank,
                      Geometric, LogDecay, PolyDecay)
from .tensor import TensorProblem, tensor_count
from .verdict import Outcome, Verdict

__version__ = "0.1.0"
