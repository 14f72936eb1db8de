"""Lower central series computations for finitely presented groups."""

from .basic import BasicCommutator, basic_sequence, expand, witt_number
from .errors import (AlphabetMismatchError, BudgetExceededError, CapExceededError,
                     InternalInconsistencyError, NilquotError, NotLieElementError, ParseError,
                     UnknownGeneratorError, WordSyntaxError)
from .hydra import (HydraNormalForm, hydra_is_trivial, hydra_normal_form, rewrite_in_c,
                    t_action)
from .lcs import (INFINITE, AbelianFactorStructure, TorsionProbeReport, element_order,
                  factor_structure, torsion_probe, verify_identity)
from .magnus import (LabuteReport, LieElement, TruncatedSeries, embed, labute_hypothesis,
                     leading_lie, lyndon_words, weight_of)
from .nq import Budget, NilpotentPresentation, nilpotent_quotient
from .presentation import Presentation, load_presentation, parse_presentation
from .words import (Alphabet, Word, commutator, hall_witt, left_normed_commutator,
                    parse_word)

__version__ = "0.1.0"
