//! Symbolic factorization of the separative quotient of `⟨P(α), ⊂⟩`, where
//! `P(α)` is the family of copies of a countable ordinal `α`.
//!
//! For `α = ω^(γₙ+rₙ)·sₙ + ⋯ + ω^(γ₀+r₀)·s₀ + k` in Cantor normal form, with
//! each `γᵢ` a limit ordinal or 1, the quotient is the product over `i` of
//! `((rp^rᵢ(P(ω^γᵢ)/I_{ω^γᵢ}))^+)^sᵢ`. [`factorize`] builds that expression
//! as a [`ForcingExpr`] in canonical form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::Ordinal;

/// Second component reported by [`iteration_form`] in general.
pub const PI_LABEL: &str = "ω₁-closed separative atomless π";
/// Second component reported by [`iteration_form`] for `ω^γ`, `γ` limit.
pub const LADDER_LABEL: &str = "(P(L)ˇ/Iˇ_{qˇ⁻¹[Γ₁]})^+";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("{0} is finite; P(alpha) is trivial below w")]
    Finite(Ordinal),
    #[error("expression is not canonical: {0}")]
    NotCanonical(String),
    #[error("invalid expression at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ForcingExpr {
    /// `P(ω^γ)/I_{ω^γ}`; for `γ = 1` this is `P(ω)/Fin`.
    QuotientAlgebra {
        gamma: Ordinal,
    },
    /// `rp^r(inner)`, the `r`-fold reduced power.
    ReducedPowerIter {
        inner: Box<ForcingExpr>,
        r: u64,
    },
    /// `(inner)^+`
    PositivePart {
        inner: Box<ForcingExpr>,
    },
    /// `(inner)^s`, the `s`-fold product of `inner` with itself.
    Power {
        inner: Box<ForcingExpr>,
        s: u64,
    },
    Product {
        factors: Vec<ForcingExpr>,
    },
    /// Two-step iteration `first ∗ second`, the second component given only
    /// by a description.
    Iteration {
        first: Box<ForcingExpr>,
        second: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl ForcingExpr {
    pub fn quotient(gamma: Ordinal) -> Self {
        ForcingExpr::QuotientAlgebra { gamma }
    }

    /// `P(ω)/Fin`
    pub fn fin_quotient() -> Self {
        Self::quotient(Ordinal::one())
    }

    pub fn rp(inner: ForcingExpr, r: u64) -> Self {
        ForcingExpr::ReducedPowerIter {
            inner: Box::new(inner),
            r,
        }
    }

    pub fn positive(inner: ForcingExpr) -> Self {
        ForcingExpr::PositivePart {
            inner: Box::new(inner),
        }
    }

    pub fn power(inner: ForcingExpr, s: u64) -> Self {
        ForcingExpr::Power {
            inner: Box::new(inner),
            s,
        }
    }

    pub fn product(factors: Vec<ForcingExpr>) -> Self {
        ForcingExpr::Product { factors }
    }

    pub fn iteration(first: ForcingExpr, second: impl Into<String>) -> Self {
        ForcingExpr::Iteration {
            first: Box::new(first),
            second: second.into(),
        }
    }

    /// `γ + r` of the underlying quotient algebra; product factors are
    /// ordered by it, largest first.
    pub fn rank(&self) -> Ordinal {
        match self {
            ForcingExpr::QuotientAlgebra { gamma } => gamma.clone(),
            ForcingExpr::ReducedPowerIter { inner, r } => &inner.rank() + &Ordinal::nat(*r),
            ForcingExpr::PositivePart { inner } | ForcingExpr::Power { inner, .. } => inner.rank(),
            ForcingExpr::Product { factors } => factors
                .iter()
                .map(ForcingExpr::rank)
                .max()
                .unwrap_or_default(),
            ForcingExpr::Iteration { first, .. } => first.rank(),
        }
    }

    /// Checks the canonical-form invariants.
    pub fn validate(&self) -> Result<(), FactorError> {
        let bad = |m: String| Err(FactorError::NotCanonical(m));
        match self {
            ForcingExpr::QuotientAlgebra { gamma } => {
                if !(gamma.is_limit() || *gamma == Ordinal::one()) {
                    return bad(format!(
                        "quotient exponent {gamma} is neither a limit nor 1"
                    ));
                }
                Ok(())
            }
            ForcingExpr::ReducedPowerIter { inner, r } => {
                if *r == 0 {
                    return bad("rp^0 left in place".into());
                }
                if matches!(**inner, ForcingExpr::ReducedPowerIter { .. }) {
                    return bad("nested reduced powers".into());
                }
                inner.validate()
            }
            ForcingExpr::PositivePart { inner } => inner.validate(),
            ForcingExpr::Power { inner, s } => {
                if *s <= 1 {
                    return bad(format!("power with exponent {s}"));
                }
                if matches!(**inner, ForcingExpr::Power { .. }) {
                    return bad("nested powers".into());
                }
                inner.validate()
            }
            ForcingExpr::Product { factors } => {
                if factors.len() == 1 {
                    return bad("singleton product".into());
                }
                for w in factors.windows(2) {
                    if w[0].rank() <= w[1].rank() {
                        return bad(format!(
                            "product factors not strictly decreasing: {} then {}",
                            w[0].rank(),
                            w[1].rank()
                        ));
                    }
                }
                factors.iter().try_for_each(ForcingExpr::validate)
            }
            ForcingExpr::Iteration { first, .. } => first.validate(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Latex => self.to_latex(),
            Format::Json => serde_json::to_string(self).expect("AST serializes"),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, false);
        out
    }

    fn write_text(&self, out: &mut String, nested: bool) {
        match self {
            ForcingExpr::QuotientAlgebra { gamma } => {
                if *gamma == Ordinal::one() {
                    out.push_str("P(w)/fin");
                } else {
                    let base = Ordinal::omega_pow(gamma.clone());
                    let _ = write!(out, "P({base})/I_({base})");
                }
            }
            ForcingExpr::ReducedPowerIter { inner, r } => {
                out.push_str("rp");
                if *r != 1 {
                    let _ = write!(out, "^{r}");
                }
                out.push('(');
                inner.write_text(out, false);
                out.push(')');
            }
            ForcingExpr::PositivePart { inner } => {
                out.push('(');
                inner.write_text(out, false);
                out.push_str(")^+");
            }
            ForcingExpr::Power { inner, s } => {
                out.push('(');
                inner.write_text(out, false);
                let _ = write!(out, ")^{s}");
            }
            ForcingExpr::Product { factors } => {
                if nested {
                    out.push('(');
                }
                for (i, f) in factors.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" x ");
                    }
                    f.write_text(out, true);
                }
                if nested {
                    out.push(')');
                }
            }
            ForcingExpr::Iteration { first, second } => {
                if nested {
                    out.push('(');
                }
                first.write_text(out, false);
                let _ = write!(out, " * \"{second}\"");
                if nested {
                    out.push(')');
                }
            }
        }
    }

    pub fn to_latex(&self) -> String {
        match self {
            ForcingExpr::QuotientAlgebra { gamma } => {
                if *gamma == Ordinal::one() {
                    r"P(\omega)/\mathrm{Fin}".to_string()
                } else {
                    let base = ordinal_latex(&Ordinal::omega_pow(gamma.clone()));
                    format!(r"P({base})/\mathcal{{I}}_{{{base}}}")
                }
            }
            ForcingExpr::ReducedPowerIter { inner, r } => {
                let sup = if *r == 1 {
                    String::new()
                } else {
                    format!("^{{{r}}}")
                };
                format!(r"\mathrm{{rp}}{sup}({})", inner.to_latex())
            }
            ForcingExpr::PositivePart { inner } => format!("({})^+", inner.to_latex()),
            ForcingExpr::Power { inner, s } => format!("({})^{{{s}}}", inner.to_latex()),
            ForcingExpr::Product { factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|f| match f {
                        ForcingExpr::Product { .. } | ForcingExpr::Iteration { .. } => {
                            format!("({})", f.to_latex())
                        }
                        _ => f.to_latex(),
                    })
                    .collect();
                parts.join(r" \times ")
            }
            ForcingExpr::Iteration { first, second } => {
                format!(r"{} \ast \text{{{second}}}", first.to_latex())
            }
        }
    }

    pub fn parse_text(s: &str) -> Result<ForcingExpr, FactorError> {
        let mut p = ExprParser { src: s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

/// LaTeX for an ordinal: `\omega^{…}`, `\cdot` for coefficients.
pub fn ordinal_latex(a: &Ordinal) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = a
        .terms()
        .iter()
        .map(|t| {
            let e = t.exponent();
            let c = t.coefficient();
            if e.is_zero() {
                return c.to_string();
            }
            let mut s = if *e == Ordinal::one() {
                r"\omega".to_string()
            } else {
                format!(r"\omega^{{{}}}", ordinal_latex(e))
            };
            if c > 1 {
                let _ = write!(s, r"\cdot {c}");
            }
            s
        })
        .collect();
    parts.join("+")
}

/// The factorization of the separative quotient of `⟨P(α), ⊂⟩` read off
/// the Cantor normal form of `α ≥ ω`.
pub fn factorize(alpha: &Ordinal) -> Result<ForcingExpr, FactorError> {
    if alpha.is_finite() {
        return Err(FactorError::Finite(alpha.clone()));
    }
    let factors = alpha
        .terms()
        .iter()
        .filter(|t| !t.exponent().is_zero())
        .map(|t| {
            let (gamma, r) = t.exponent().split_exponent().expect("positive exponent");
            ForcingExpr::power(
                ForcingExpr::positive(ForcingExpr::rp(ForcingExpr::quotient(gamma), r)),
                t.coefficient(),
            )
        })
        .collect();
    Ok(simplify(&ForcingExpr::product(factors)))
}

/// Canonical form:
/// - `P(ω^(γ+r))/I` with `γ` limit or 1 becomes `rp^r(P(ω^γ)/I)`;
/// - `rp^0(X)` becomes `X`, nested reduced powers add up;
/// - `X^1` becomes `X`, nested powers multiply, `((X)^+)^+` is `(X)^+`;
/// - products are flattened, equal factors merged into powers, sorted by
///   decreasing rank, and singleton products unwrapped.
pub fn simplify(e: &ForcingExpr) -> ForcingExpr {
    use ForcingExpr::*;
    match e {
        QuotientAlgebra { gamma } => match gamma.split_exponent() {
            Ok((base, r)) if r > 0 => ForcingExpr::rp(ForcingExpr::quotient(base), r),
            _ => e.clone(),
        },
        ReducedPowerIter { inner, r } => {
            let inner = simplify(inner);
            match inner {
                _ if *r == 0 => inner,
                ReducedPowerIter { inner: x, r: r2 } => ForcingExpr::rp(*x, r + r2),
                x => ForcingExpr::rp(x, *r),
            }
        }
        PositivePart { inner } => match simplify(inner) {
            p @ PositivePart { .. } => p,
            x => ForcingExpr::positive(x),
        },
        Power { inner, s } => {
            let inner = simplify(inner);
            match inner {
                _ if *s == 1 => inner,
                Power { inner: x, s: s2 } => ForcingExpr::power(*x, s * s2),
                x => ForcingExpr::power(x, *s),
            }
        }
        Product { factors } => {
            let mut flat = Vec::new();
            for f in factors {
                match simplify(f) {
                    Product { factors } => flat.extend(factors),
                    x => flat.push(x),
                }
            }
            let mut merged: Vec<(ForcingExpr, u64)> = Vec::new();
            for f in flat {
                let (base, s) = match f {
                    Power { inner, s } => (*inner, s),
                    x => (x, 1),
                };
                match merged.iter_mut().find(|(b, _)| *b == base) {
                    Some((_, total)) => *total += s,
                    None => merged.push((base, s)),
                }
            }
            let mut out: Vec<ForcingExpr> = merged
                .into_iter()
                .map(|(b, s)| if s == 1 { b } else { ForcingExpr::power(b, s) })
                .collect();
            out.sort_by(|a, b| {
                b.rank()
                    .cmp(&a.rank())
                    .then_with(|| a.to_text().cmp(&b.to_text()))
            });
            if out.len() == 1 {
                out.pop().expect("one factor")
            } else {
                Product { factors: out }
            }
        }
        Iteration { first, second } => ForcingExpr::iteration(simplify(first), second.clone()),
    }
}

/// The two-step iteration form: `(P(ω)/Fin)^+` itself below `ω + ω`,
/// otherwise `(P(ω)/Fin)^+ ∗ π` with `π` described by its label.
pub fn iteration_form(alpha: &Ordinal) -> Result<ForcingExpr, FactorError> {
    if alpha.is_finite() {
        return Err(FactorError::Finite(alpha.clone()));
    }
    let head = ForcingExpr::positive(ForcingExpr::fin_quotient());
    if *alpha < Ordinal::monomial(Ordinal::one(), 2) {
        return Ok(head);
    }
    let ladder = matches!(alpha.terms(), [t] if t.coefficient() == 1 && t.exponent().is_limit());
    let label = if ladder { LADDER_LABEL } else { PI_LABEL };
    Ok(ForcingExpr::iteration(head, label))
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: impl Into<String>) -> FactorError {
        FactorError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), FactorError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {tok:?}")))
        }
    }

    fn natural(&mut self) -> Result<u64, FactorError> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        let n = self.rest()[..len]
            .parse()
            .map_err(|_| self.error("expected a natural number"))?;
        self.pos += len;
        Ok(n)
    }

    /// Text up to the parenthesis closing one already consumed.
    fn balanced(&mut self) -> Result<&str, FactorError> {
        let start = self.pos;
        let mut depth = 0usize;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    self.pos = start + i + 1;
                    return Ok(&self.src[start..start + i]);
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        Err(self.error("unbalanced parenthesis"))
    }

    fn power_of_omega(&mut self) -> Result<Ordinal, FactorError> {
        let at = self.pos;
        let text = self.balanced()?;
        let base: Ordinal = text.parse().map_err(|e| FactorError::Parse {
            pos: at,
            msg: format!("{e}"),
        })?;
        match base.terms() {
            [t] if t.coefficient() == 1 => Ok(t.exponent().clone()),
            _ => Err(FactorError::Parse {
                pos: at,
                msg: format!("{base} is not a power of w"),
            }),
        }
    }

    fn expr(&mut self) -> Result<ForcingExpr, FactorError> {
        let first = self.product()?;
        if !self.eat("*") {
            return Ok(first);
        }
        self.expect("\"")?;
        let end = self
            .rest()
            .find('"')
            .ok_or_else(|| self.error("unterminated label"))?;
        let label = self.rest()[..end].to_string();
        self.pos += end + 1;
        Ok(ForcingExpr::iteration(first, label))
    }

    fn product(&mut self) -> Result<ForcingExpr, FactorError> {
        let mut factors = vec![self.unary()?];
        while self.eat("x") {
            factors.push(self.unary()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            ForcingExpr::product(factors)
        })
    }

    fn unary(&mut self) -> Result<ForcingExpr, FactorError> {
        let mut e = self.primary()?;
        while self.eat("^") {
            if self.eat("+") {
                e = ForcingExpr::positive(e);
            } else {
                e = ForcingExpr::power(e, self.natural()?);
            }
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<ForcingExpr, FactorError> {
        if self.eat("rp") {
            let r = if self.eat("^") { self.natural()? } else { 1 };
            self.expect("(")?;
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(ForcingExpr::rp(inner, r));
        }
        if self.eat("P(") {
            let gamma = self.power_of_omega()?;
            self.expect("/")?;
            if self.eat("fin") {
                if gamma != Ordinal::one() {
                    return Err(self.error("'fin' only quotients P(w)"));
                }
            } else {
                self.expect("I_(")?;
                let g2 = self.power_of_omega()?;
                if g2 != gamma {
                    return Err(self.error("ideal does not match the algebra"));
                }
            }
            return Ok(ForcingExpr::quotient(gamma));
        }
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        Err(self.error("expected an expression"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn text(s: &str) -> String {
        factorize(&o(s)).unwrap().to_text()
    }

    #[test]
    fn corollary_goldens() {
        assert_eq!(text("w"), "(P(w)/fin)^+");
        assert_eq!(text("w^2"), "(rp(P(w)/fin))^+");
        assert_eq!(text("w*3"), "((P(w)/fin)^+)^3");
        assert_eq!(text("w^4"), "(rp^3(P(w)/fin))^+");
    }

    #[test]
    fn mixed_normal_form() {
        let e = factorize(&o("w^(w+2)*3 + w^5*2 + 4")).unwrap();
        let q_omega = ForcingExpr::quotient(o("w"));
        let expected = ForcingExpr::product(vec![
            ForcingExpr::power(ForcingExpr::positive(ForcingExpr::rp(q_omega, 2)), 3),
            ForcingExpr::power(
                ForcingExpr::positive(ForcingExpr::rp(ForcingExpr::fin_quotient(), 4)),
                2,
            ),
        ]);
        assert_eq!(e, expected);
        assert_eq!(
            e.to_text(),
            "((rp^2(P(w^(w))/I_(w^(w))))^+)^3 x ((rp^4(P(w)/fin))^+)^2"
        );
        e.validate().unwrap();
    }

    #[test]
    fn finite_tail_is_dropped() {
        assert_eq!(factorize(&o("w+5")), factorize(&o("w")));
        assert_eq!(factorize(&o("w^(w)*2+w+9")), factorize(&o("w^(w)*2+w")));
        assert_eq!(factorize(&o("7")), Err(FactorError::Finite(o("7"))));
    }

    #[test]
    fn simplification_rules() {
        let x = ForcingExpr::positive(ForcingExpr::fin_quotient());
        assert_eq!(simplify(&ForcingExpr::rp(x.clone(), 0)), x);
        assert_eq!(simplify(&ForcingExpr::product(vec![x.clone()])), x);
        assert_eq!(simplify(&ForcingExpr::power(x.clone(), 1)), x);
        assert_eq!(
            simplify(&ForcingExpr::product(vec![
                x.clone(),
                ForcingExpr::power(x.clone(), 2)
            ])),
            ForcingExpr::power(x.clone(), 3)
        );
        assert_eq!(
            simplify(&ForcingExpr::power(ForcingExpr::power(x.clone(), 2), 3)),
            ForcingExpr::power(x.clone(), 6)
        );
        assert_eq!(
            simplify(&ForcingExpr::quotient(o("3"))),
            ForcingExpr::rp(ForcingExpr::fin_quotient(), 2)
        );
        assert_eq!(
            simplify(&ForcingExpr::rp(
                ForcingExpr::rp(ForcingExpr::fin_quotient(), 1),
                2
            )),
            ForcingExpr::rp(ForcingExpr::fin_quotient(), 3)
        );
        let big = ForcingExpr::positive(ForcingExpr::quotient(o("w")));
        let sorted = simplify(&ForcingExpr::product(vec![x.clone(), big.clone()]));
        assert_eq!(sorted, ForcingExpr::product(vec![big, x]));
    }

    #[test]
    fn validation() {
        let x = ForcingExpr::positive(ForcingExpr::fin_quotient());
        assert!(ForcingExpr::quotient(o("2")).validate().is_err());
        assert!(ForcingExpr::rp(x.clone(), 0).validate().is_err());
        assert!(ForcingExpr::power(x.clone(), 1).validate().is_err());
        assert!(ForcingExpr::product(vec![x.clone(), x.clone()])
            .validate()
            .is_err());
        assert!(x.validate().is_ok());
    }

    #[test]
    fn iteration_forms() {
        let head = ForcingExpr::positive(ForcingExpr::fin_quotient());
        assert_eq!(iteration_form(&o("w")).unwrap(), head);
        assert_eq!(iteration_form(&o("w+17")).unwrap(), head);
        assert_eq!(
            iteration_form(&o("w*2")).unwrap(),
            ForcingExpr::iteration(head.clone(), PI_LABEL)
        );
        assert_eq!(
            iteration_form(&o("w^(w)")).unwrap(),
            ForcingExpr::iteration(head.clone(), LADDER_LABEL)
        );
        assert_eq!(
            iteration_form(&o("w^(w)+1")).unwrap(),
            ForcingExpr::iteration(head, PI_LABEL)
        );
        assert!(iteration_form(&o("3")).is_err());
    }

    #[test]
    fn renderings() {
        let x = ForcingExpr::positive(ForcingExpr::fin_quotient());
        assert_eq!(x.render(Format::Text), "(P(w)/fin)^+");
        assert_eq!(x.render(Format::Latex), r"(P(\omega)/\mathrm{Fin})^+");
        assert_eq!(
            x.render(Format::Json),
            r#"{"kind":"PositivePart","inner":{"kind":"QuotientAlgebra","gamma":"1"}}"#
        );
        let e = factorize(&o("w^(w+2)*3 + w^5*2")).unwrap();
        assert_eq!(
            e.to_latex(),
            r"((\mathrm{rp}^{2}(P(\omega^{\omega})/\mathcal{I}_{\omega^{\omega}}))^+)^{3} \times ((\mathrm{rp}^{4}(P(\omega)/\mathrm{Fin}))^+)^{2}"
        );
        let json = e.render(Format::Json);
        assert_eq!(serde_json::from_str::<ForcingExpr>(&json).unwrap(), e);
    }

    #[test]
    fn text_round_trip() {
        for a in [
            "w",
            "w^2",
            "w*3+2",
            "w^(w+2)*3+w^5*2+4",
            "w^(w^(w)+w)+w^3*2+w",
        ] {
            let e = factorize(&o(a)).unwrap();
            assert_eq!(ForcingExpr::parse_text(&e.to_text()).unwrap(), e, "{a}");
        }
        let it = iteration_form(&o("w^(w)")).unwrap();
        assert_eq!(ForcingExpr::parse_text(&it.to_text()).unwrap(), it);
        let nested = ForcingExpr::product(vec![
            ForcingExpr::product(vec![
                ForcingExpr::fin_quotient(),
                ForcingExpr::fin_quotient(),
            ]),
            ForcingExpr::fin_quotient(),
        ]);
        assert_eq!(ForcingExpr::parse_text(&nested.to_text()).unwrap(), nested);
        assert!(ForcingExpr::parse_text("(P(w)/fin").is_err());
        assert!(ForcingExpr::parse_text("P(w*2)/fin").is_err());
        assert!(ForcingExpr::parse_text("P(w^2)/fin").is_err());
    }
}
