//! Stable citation keys attached to verdicts and reports.

pub const BW19: &str = "BW19";
pub const GT22: &str = "GT22";
pub const FS23: &str = "FS23";
pub const RSS15: &str = "RSS15";
pub const RST15: &str = "RST15";
pub const WZ10: &str = "WZ10";
pub const BBSTWW: &str = "BBSTWW";
pub const GLA20: &str = "Gla20";
pub const EV22: &str = "Ev22";
/// Nuclear dimension `max(1, dim X)` for essential extensions of `C(X)` by a
/// stable Kirchberg algebra.
pub const THM_MAIN: &str = "ThmMain";
/// The same with a quotient only stably isomorphic to `C(X)`.
pub const COR_STABLE_QUOTIENT: &str = "CorStableQuotient";
/// The graph characterization of those extensions (the V₀ ⊔ V₁ ⊔ V₂ test).
pub const PROP_WHICH_GRAPH_ALGEBRAS: &str = "PropWhichGraphAlgebras";
/// Disjoint exitless simple cycles give stably `⊕ M_|C|(C(T))`.
pub const LEMMA_52: &str = "Lemma52";

pub const ALL: [&str; 13] = [
    BW19,
    GT22,
    FS23,
    RSS15,
    RST15,
    WZ10,
    BBSTWW,
    GLA20,
    EV22,
    THM_MAIN,
    COR_STABLE_QUOTIENT,
    PROP_WHICH_GRAPH_ALGEBRAS,
    LEMMA_52,
];
