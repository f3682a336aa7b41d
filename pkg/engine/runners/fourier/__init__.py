from engine.runners.fourier.hilbert import HilbertRatioRunner
from engine.runners.fourier.opnorm import OpNormRunner
from engine.runners.fourier.parser import SymbolParser
from engine.runners.fourier.symbol_eval import SymbolEvalRunner

__all__ = ["HilbertRatioRunner", "OpNormRunner", "SymbolEvalRunner", "SymbolParser"]
