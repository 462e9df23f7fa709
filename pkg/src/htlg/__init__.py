"""Hybrid type-logical grammar toolkit: formulas and prosodic terms, lexicons,
natural deduction and sequent proofs, proof nets with contraction, and a parser."""
from .formulas import Atom, Formula, Limp, Over, Under, parse_formula, pros
from .lexicon import LexEntry, Lexicon, builtin, load, loads
from .nd import NDProof, check_nd, is_normal, normalize_nd
from .prover import Derivation, ParseResult, derivable, parse, prove, sequentialise
from .sequent import SeqProof, check_seq, eliminate_cuts, prove_seq
from .terms import parse_term, show

__version__ = "0.1.0"

__all__ = ["Atom", "Formula", "Limp", "Over", "Under", "parse_formula", "pros", "LexEntry",
           "Lexicon", "builtin", "load", "loads", "NDProof", "check_nd", "is_normal",
           "normalize_nd", "Derivation", "ParseResult", "derivable", "parse", "prove",
           "sequentialise", "SeqProof", "check_seq", "eliminate_cuts", "prove_seq", "parse_term",
           "show"]
