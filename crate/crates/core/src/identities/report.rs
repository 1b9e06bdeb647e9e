//! Verification records and their one-line JSON wire format.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hyper::EvalResult;
use crate::rational::{parse_rational, Rational};
use crate::series::TruncatedSeries;

/// Identity selector. The string names are the stable ids used on the
/// command line and in structured output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// Terminating `2F1(alpha, 1-k; -k; k/(alpha+k))` against its product form.
    ClosedForm,
    /// The cubic family `2F1(a, 3a+1; 3a; 3/2)`.
    Case1,
    /// The quartic family `2F1(a, 4a+1; 4a; 4/3)`.
    Case2,
    /// `2F1(a, qa+1; qa; q/(q-1))` at `a = -j/q - m`.
    Family,
    /// `2F1(alpha, 1+gamma; gamma; x)` as a series, for every `gamma != 0`.
    ContiguousSeries,
    /// The same closed form at a rational point, terminating in `alpha`.
    ContiguousPointwise,
    /// Splitting the `gamma = -k` series into a terminating part and a tail.
    LimitSplit,
    /// General three-term contiguous relation in the second upper parameter.
    ThreeTerm,
    /// The three-term relation specialized to `(alpha+k+1, 1, k+2)`.
    ThreeTermSpecial,
    /// `2F1(alpha+k+1, 2; k+2; k/(alpha+k)) = (alpha+k)(k+1)/alpha`.
    StrangeEvaluation,
    /// The chain deriving the closed form from the pieces above.
    ProofChain,
}

impl IdentityId {
    pub const ALL: [IdentityId; 11] = [
        IdentityId::ClosedForm,
        IdentityId::Case1,
        IdentityId::Case2,
        IdentityId::Family,
        IdentityId::ContiguousSeries,
        IdentityId::ContiguousPointwise,
        IdentityId::LimitSplit,
        IdentityId::ThreeTerm,
        IdentityId::ThreeTermSpecial,
        IdentityId::StrangeEvaluation,
        IdentityId::ProofChain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::ClosedForm => "gosper2",
            IdentityId::Case1 => "case1",
            IdentityId::Case2 => "case2",
            IdentityId::Family => "family",
            IdentityId::ContiguousSeries => "lmm1",
            IdentityId::ContiguousPointwise => "lmm1-pointwise",
            IdentityId::LimitSplit => "lmm2",
            IdentityId::ThreeTerm => "3tr1",
            IdentityId::ThreeTermSpecial => "3tr2",
            IdentityId::StrangeEvaluation => "lmm3",
            IdentityId::ProofChain => "proofpath",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Enclosure,
    Series(usize),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Enclosure => f.write_str("enclosure"),
            Mode::Series(n) => write!(f, "series({n})"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "enclosure" => Ok(Mode::Enclosure),
            _ => s
                .strip_prefix("series(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .map(Mode::Series)
                .ok_or_else(|| Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Side {
    Exact(Rational),
    Enclosure {
        lo: Rational,
        hi: Rational,
    },
    Series(Vec<Rational>),
    /// The side could not be evaluated; see the report's error.
    Unavailable,
}

impl From<EvalResult> for Side {
    fn from(r: EvalResult) -> Self {
        match r {
            EvalResult::Exact(v) => Side::Exact(v),
            EvalResult::Enclosure { lo, hi } => Side::Enclosure { lo, hi },
        }
    }
}

impl From<TruncatedSeries> for Side {
    fn from(s: TruncatedSeries) -> Self {
        Side::Series(s.into_coeffs())
    }
}

impl Side {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Side::Exact(v) => Some(v),
            _ => None,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Side::Exact(v) => Value::String(v.to_string()),
            Side::Enclosure { lo, hi } => json!({ "lo": lo.to_string(), "hi": hi.to_string() }),
            Side::Series(c) => Value::Array(c.iter().map(|v| Value::String(v.to_string())).collect()),
            Side::Unavailable => Value::Null,
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let rat = |v: &Value| -> Result<Rational> {
            v.as_str()
                .ok_or_else(|| Error::Parse("expected a rational string".into()))
                .and_then(parse_rational)
        };
        match v {
            Value::Null => Ok(Side::Unavailable),
            Value::String(_) => Ok(Side::Exact(rat(v)?)),
            Value::Object(m) => Ok(Side::Enclosure {
                lo: rat(m.get("lo").unwrap_or(&Value::Null))?,
                hi: rat(m.get("hi").unwrap_or(&Value::Null))?,
            }),
            Value::Array(items) => Ok(Side::Series(items.iter().map(rat).collect::<Result<_>>()?)),
            _ => Err(Error::Parse("malformed side".into())),
        }
    }

    fn summary(&self) -> String {
        match self {
            Side::Exact(v) => v.to_string(),
            Side::Enclosure { lo, hi } => {
                format!("[{:.17e}, {:.17e}]", to_f64(lo), to_f64(hi))
            }
            Side::Series(c) => {
                let head: Vec<String> = c.iter().take(3).map(ToString::to_string).collect();
                format!("{}, ... ({} coefficients)", head.join(", "), c.len())
            }
            Side::Unavailable => "-".into(),
        }
    }
}

fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub params: BTreeMap<String, Rational>,
    pub lhs: Side,
    pub rhs: Side,
    pub equal: bool,
    pub mode: Mode,
    pub error: Option<String>,
}

impl IdentityReport {
    pub fn new(
        identity: IdentityId,
        params: &[(&str, Rational)],
        lhs: Side,
        rhs: Side,
        equal: bool,
        mode: Mode,
    ) -> Self {
        IdentityReport {
            identity,
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            lhs,
            rhs,
            equal,
            mode,
            error: None,
        }
    }

    /// Report for an instance whose evaluation failed.
    pub fn failed(identity: IdentityId, params: &[(&str, Rational)], mode: Mode, err: &Error) -> Self {
        let mut r = Self::new(identity, params, Side::Unavailable, Side::Unavailable, false, mode);
        r.error = Some(err.to_string());
        r
    }

    pub fn param(&self, name: &str) -> Option<&Rational> {
        self.params.get(name)
    }

    pub fn to_json_line(&self) -> String {
        let mut obj = Map::new();
        obj.insert("identity".into(), Value::String(self.identity.as_str().into()));
        obj.insert(
            "params".into(),
            Value::Object(
                self.params
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
                    .collect(),
            ),
        );
        obj.insert("lhs".into(), self.lhs.to_json());
        obj.insert("rhs".into(), self.rhs.to_json());
        obj.insert("equal".into(), Value::Bool(self.equal));
        obj.insert("mode".into(), Value::String(self.mode.to_string()));
        if let Some(e) = &self.error {
            obj.insert("error".into(), Value::String(e.clone()));
        }
        Value::Object(obj).to_string()
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
        let field = |name: &str| {
            v.get(name)
                .ok_or_else(|| Error::Parse(format!("missing field `{name}`")))
        };
        let text = |name: &str| -> Result<&str> {
            field(name)?
                .as_str()
                .ok_or_else(|| Error::Parse(format!("field `{name}` is not a string")))
        };
        let params = field("params")?
            .as_object()
            .ok_or_else(|| Error::Parse("params is not an object".into()))?
            .iter()
            .map(|(k, v)| {
                let s = v
                    .as_str()
                    .ok_or_else(|| Error::Parse(format!("param `{k}` is not a string")))?;
                Ok((k.clone(), parse_rational(s)?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(IdentityReport {
            identity: text("identity")?.parse()?,
            params,
            lhs: Side::from_json(field("lhs")?)?,
            rhs: Side::from_json(field("rhs")?)?,
            equal: field("equal")?
                .as_bool()
                .ok_or_else(|| Error::Parse("equal is not a bool".into()))?,
            mode: text("mode")?.parse()?,
            error: v.get("error").and_then(Value::as_str).map(String::from),
        })
    }

    /// Human-readable one-liner.
    pub fn to_text_line(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let verdict = if self.equal { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{verdict} {} {} [{}] lhs = {} | rhs = {}",
            self.identity,
            params.join(" "),
            self.mode,
            self.lhs.summary(),
            self.rhs.summary()
        );
        if let Some(e) = &self.error {
            line.push_str(&format!(" | error: {e}"));
        }
        line
    }
}
