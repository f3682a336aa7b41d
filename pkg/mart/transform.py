import numpy as np

from core.errors import SubordinationViolatedError, UsageError
from mart.ensemble import DiscretePathEnsemble, FactorProcess
from mart.rules import FactorRule

EXTRACTION_TOLERANCE = 1e-9


def factor_process(ensemble: DiscretePathEnsemble, factor_rule: FactorRule) -> FactorProcess:
    """Evaluate an adapted factor rule on the ensemble's driving history."""
    if ensemble.history is None:
        raise UsageError("Factor rules need an ensemble that records its driving history")
    values = np.empty((ensemble.n_paths, ensemble.depth + 1))
    empty = ensemble.history[:, :0]
    values[:, 0] = factor_rule(0, empty)
    for n in range(1, ensemble.depth + 1):
        values[:, n] = factor_rule(n, ensemble.history[:, : n - 1])
    return FactorProcess(values)


def transform(f: DiscretePathEnsemble, a: FactorProcess) -> DiscretePathEnsemble:
    """``dg_n = a_n df_n`` pathwise, including ``g_0 = a_0 f_0``."""
    if a.values.shape != f.increments.shape[:2]:
        raise UsageError(
            f"Factor shape {a.values.shape} does not match ensemble {f.increments.shape[:2]}"
        )
    return DiscretePathEnsemble(
        f.space,
        a.values[:, :, None] * f.increments,
        seed=f.seed,
        history=f.history,
        exact=f.exact,
    )


def extract_factor(f: DiscretePathEnsemble, g: DiscretePathEnsemble) -> FactorProcess:
    """Recover ``a`` with ``dg = a df`` from the first coordinate where dg is nonzero.

    Steps with ``dg = 0`` get ``a = 0``. Raises SubordinationViolatedError when
    dg is not a multiple of df or the multiple exceeds 1 in modulus.
    """
    df = f.increments
    dg = g.increments
    if df.shape != dg.shape:
        raise UsageError(f"Ensembles differ in shape: {df.shape} vs {dg.shape}")

    nonzero = dg != 0
    active = np.any(nonzero, axis=2)
    first = np.argmax(nonzero, axis=2)
    dg_m = np.take_along_axis(dg, first[:, :, None], axis=2)[:, :, 0]
    df_m = np.take_along_axis(df, first[:, :, None], axis=2)[:, :, 0]

    if np.any(active & (df_m == 0)):
        raise SubordinationViolatedError("dg is nonzero where df vanishes")
    a = np.zeros(active.shape)
    a[active] = dg_m[active] / df_m[active]

    scale = np.maximum(np.max(np.abs(df), axis=2), np.max(np.abs(dg), axis=2))
    residual = np.max(np.abs(dg - a[:, :, None] * df), axis=2)
    if np.any(residual > EXTRACTION_TOLERANCE * np.maximum(scale, 1.0)):
        raise SubordinationViolatedError("dg is not a scalar multiple of df on every step")

    worst = float(np.max(np.abs(a), initial=0.0))
    if worst > 1.0 + EXTRACTION_TOLERANCE:
        raise SubordinationViolatedError(f"Extracted factor reaches |a| = {worst}")
    return FactorProcess(np.clip(a, -1.0, 1.0))
