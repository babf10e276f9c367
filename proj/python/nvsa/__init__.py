"""Vector-symbolic Raven's-matrix solver.

Thin Python surface over the C++ core: bipolar and phasor VSA algebras,
the bundled-scene object codec, PMF perception, a deterministic synthetic
test generator, and the vector-symbolic and exact solving engines.
"""

from nvsa._core import (  # noqa: F401
    AnswerMode,
    AttributePMF,
    BackendConfig,
    BipolarVector,
    ConstellationKind,
    ExactOracle,
    ObjectCode,
    ObjectDictionary,
    ObjectSpec,
    PanelPMFs,
    PhasorVector,
    ReasoningBackend,
    RpmTest,
    Scene,
    SolveResult,
    bipolar_bind,
    bipolar_bundle,
    bipolar_negate,
    bipolar_random,
    constellation_name,
    cosine_sim,
    fhrr_bind,
    fhrr_bundle_weighted,
    fhrr_identity,
    fhrr_random,
    fhrr_sim,
    fhrr_unbind,
    fractional_power,
    from_jsonl_line,
    generate_test,
    jsd,
    panel_pmfs,
    scene_codes,
    scene_from_codes,
    to_jsonl_line,
    verify_rules,
)

__all__ = [name for name in dir() if not name.startswith("_")]
