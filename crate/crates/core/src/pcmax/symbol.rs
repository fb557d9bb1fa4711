//! Symbolic job annotations for the variable-count reduction and their
//! canonical text form (`V i=3 k=1 T`, `HG varclause j=4 i=5 -`, ...).

use super::PcMaxError;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    T,
    F,
}

impl Truth {
    pub fn flipped(self) -> Truth {
        match self {
            Truth::T => Truth::F,
            Truth::F => Truth::T,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Truth::T { "T" } else { "F" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_positive(self) -> bool {
        self == Sign::Plus
    }

    pub fn from_polarity(positive: bool) -> Sign {
        if positive {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Sign::Plus { "+" } else { "-" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaKind {
    A,
    B,
    C,
    D,
}

impl TaKind {
    pub const ALL: [TaKind; 4] = [TaKind::A, TaKind::B, TaKind::C, TaKind::D];

    pub fn letter(self) -> char {
        match self {
            TaKind::A => 'a',
            TaKind::B => 'b',
            TaKind::C => 'c',
            TaKind::D => 'd',
        }
    }
}

/// Which two truth-assignment kinds a variable-assignment gap consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaPair {
    Ac,
    Bd,
    Ad,
    Bc,
}

impl TaPair {
    pub const ALL: [TaPair; 4] = [TaPair::Ac, TaPair::Bd, TaPair::Ad, TaPair::Bc];

    pub fn kinds(self) -> (TaKind, TaKind) {
        match self {
            TaPair::Ac => (TaKind::A, TaKind::C),
            TaPair::Bd => (TaKind::B, TaKind::D),
            TaPair::Ad => (TaKind::A, TaKind::D),
            TaPair::Bc => (TaKind::B, TaKind::C),
        }
    }

    /// Variable slot filling this gap: ac->1, bd->2, ad->3, bc->4.
    pub fn variable_slot(self) -> u8 {
        match self {
            TaPair::Ac => 1,
            TaPair::Bd => 2,
            TaPair::Ad => 3,
            TaPair::Bc => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TaPair::Ac => "ac",
            TaPair::Bd => "bd",
            TaPair::Ad => "ad",
            TaPair::Bc => "bc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DummyClass {
    R1000,
    R1002,
}

impl DummyClass {
    pub fn r_coeff(self) -> u32 {
        match self {
            DummyClass::R1000 => 1000,
            DummyClass::R1002 => 1002,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DummyClass::R1000 => "1000r",
            DummyClass::R1002 => "1002r",
        }
    }
}

/// Huge jobs: one per machine, each leaving a gap that only a specific
/// companion set can fill exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HugeKind {
    /// Pairs a variable job v_{i,2}/v_{i,4} with its deepest-layer agent.
    VarAgent { i: u64, sign: Sign },
    /// Chains layer-(j+1) and layer-j agents of one variable.
    LayerDec { i: u64, layer: u32, sign: Sign },
    /// Pairs the layer-1 agents of the two endpoints of a C2 clause.
    AgentAgent { i: u64, k: u64 },
    /// Clause job + variable job + dummy, per literal of a C1 clause.
    VarClause { j: u64, i: u64, sign: Sign },
    /// Leftover variable job + dummy.
    VarDummy { i: u64, sign: Sign },
    /// Variable job + one of A/B + one of C/D.
    VarAssign { i: u64, pair: TaPair },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum JobSymbol {
    Variable { i: u64, slot: u8, truth: Truth },
    Agent { i: u64, layer: u32, sign: Sign, truth: Truth },
    TruthAssign { kind: TaKind, i: u64, truth: Truth },
    /// copy is 0 for the true job, 1 or 2 for the two false copies.
    Clause { j: u64, truth: Truth, copy: u8 },
    Dummy { class: DummyClass, ordinal: u64 },
    Huge(HugeKind),
}

/// Coarse job family, the level recoverable from a bare processing time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JobFamily {
    Variable,
    Agent,
    TruthAssign,
    Clause,
    Dummy,
    Huge,
}

impl JobSymbol {
    pub fn family(&self) -> JobFamily {
        match self {
            JobSymbol::Variable { .. } => JobFamily::Variable,
            JobSymbol::Agent { .. } => JobFamily::Agent,
            JobSymbol::TruthAssign { .. } => JobFamily::TruthAssign,
            JobSymbol::Clause { .. } => JobFamily::Clause,
            JobSymbol::Dummy { .. } => JobFamily::Dummy,
            JobSymbol::Huge(_) => JobFamily::Huge,
        }
    }

    pub fn truth(&self) -> Option<Truth> {
        match self {
            JobSymbol::Variable { truth, .. }
            | JobSymbol::Agent { truth, .. }
            | JobSymbol::TruthAssign { truth, .. }
            | JobSymbol::Clause { truth, .. } => Some(*truth),
            _ => None,
        }
    }
}

impl fmt::Display for JobSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JobSymbol::Variable { i, slot, truth } => write!(f, "V i={i} k={slot} {truth}"),
            JobSymbol::Agent { i, layer, sign, truth } => write!(f, "AG i={i} j={layer} {sign} {truth}"),
            JobSymbol::TruthAssign { kind, i, truth } => write!(f, "TA {} i={i} {truth}", kind.letter()),
            JobSymbol::Clause { j, truth: Truth::T, .. } => write!(f, "CL j={j} T"),
            JobSymbol::Clause { j, truth: Truth::F, copy } => write!(f, "CL j={j} F {copy}"),
            JobSymbol::Dummy { class, ordinal } => write!(f, "DU {} {ordinal}", class.as_str()),
            JobSymbol::Huge(h) => match h {
                HugeKind::VarAgent { i, sign } => write!(f, "HG varagent i={i} {sign}"),
                HugeKind::LayerDec { i, layer, sign } => write!(f, "HG layerdec i={i} j={layer} {sign}"),
                HugeKind::AgentAgent { i, k } => write!(f, "HG agentagent i={i} k={k}"),
                HugeKind::VarClause { j, i, sign } => write!(f, "HG varclause j={j} i={i} {sign}"),
                HugeKind::VarDummy { i, sign } => write!(f, "HG vardummy i={i} {sign}"),
                HugeKind::VarAssign { i, pair } => write!(f, "HG varassign i={i} {}", pair.as_str()),
            },
        }
    }
}

fn field<'a>(tok: &'a str, key: &str) -> Result<&'a str, PcMaxError> {
    tok.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| PcMaxError::Symbol(format!("expected `{key}=<value>`, got `{tok}`")))
}

fn num<T: std::str::FromStr>(text: &str) -> Result<T, PcMaxError> {
    text.parse().map_err(|_| PcMaxError::Symbol(format!("bad number `{text}`")))
}

fn truth(tok: &str) -> Result<Truth, PcMaxError> {
    match tok {
        "T" => Ok(Truth::T),
        "F" => Ok(Truth::F),
        _ => Err(PcMaxError::Symbol(format!("bad truth tag `{tok}`"))),
    }
}

fn sign(tok: &str) -> Result<Sign, PcMaxError> {
    match tok {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(PcMaxError::Symbol(format!("bad sign `{tok}`"))),
    }
}

impl std::str::FromStr for JobSymbol {
    type Err = PcMaxError;

    fn from_str(text: &str) -> Result<Self, PcMaxError> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let bad = || PcMaxError::Symbol(format!("malformed symbol `{text}`"));
        match toks.as_slice() {
            ["V", i, k, t] => Ok(JobSymbol::Variable {
                i: num(field(i, "i")?)?,
                slot: num(field(k, "k")?)?,
                truth: truth(t)?,
            }),
            ["AG", i, j, s, t] => Ok(JobSymbol::Agent {
                i: num(field(i, "i")?)?,
                layer: num(field(j, "j")?)?,
                sign: sign(s)?,
                truth: truth(t)?,
            }),
            ["TA", kind, i, t] => {
                let kind = match *kind {
                    "a" => TaKind::A,
                    "b" => TaKind::B,
                    "c" => TaKind::C,
                    "d" => TaKind::D,
                    _ => return Err(bad()),
                };
                Ok(JobSymbol::TruthAssign { kind, i: num(field(i, "i")?)?, truth: truth(t)? })
            }
            ["CL", j, "T"] => Ok(JobSymbol::Clause { j: num(field(j, "j")?)?, truth: Truth::T, copy: 0 }),
            ["CL", j, "F", c] => Ok(JobSymbol::Clause { j: num(field(j, "j")?)?, truth: Truth::F, copy: num(c)? }),
            ["DU", class, ord] => {
                let class = match *class {
                    "1000r" => DummyClass::R1000,
                    "1002r" => DummyClass::R1002,
                    _ => return Err(bad()),
                };
                Ok(JobSymbol::Dummy { class, ordinal: num(ord)? })
            }
            ["HG", "varagent", i, s] => Ok(JobSymbol::Huge(HugeKind::VarAgent {
                i: num(field(i, "i")?)?,
                sign: sign(s)?,
            })),
            ["HG", "layerdec", i, j, s] => Ok(JobSymbol::Huge(HugeKind::LayerDec {
                i: num(field(i, "i")?)?,
                layer: num(field(j, "j")?)?,
                sign: sign(s)?,
            })),
            ["HG", "agentagent", i, k] => Ok(JobSymbol::Huge(HugeKind::AgentAgent {
                i: num(field(i, "i")?)?,
                k: num(field(k, "k")?)?,
            })),
            ["HG", "varclause", j, i, s] => Ok(JobSymbol::Huge(HugeKind::VarClause {
                j: num(field(j, "j")?)?,
                i: num(field(i, "i")?)?,
                sign: sign(s)?,
            })),
            ["HG", "vardummy", i, s] => Ok(JobSymbol::Huge(HugeKind::VarDummy {
                i: num(field(i, "i")?)?,
                sign: sign(s)?,
            })),
            ["HG", "varassign", i, pair] => {
                let pair = match *pair {
                    "ac" => TaPair::Ac,
                    "bd" => TaPair::Bd,
                    "ad" => TaPair::Ad,
                    "bc" => TaPair::Bc,
                    _ => return Err(bad()),
                };
                Ok(JobSymbol::Huge(HugeKind::VarAssign { i: num(field(i, "i")?)?, pair }))
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_text_roundtrip() {
        let samples = [
            JobSymbol::Variable { i: 3, slot: 1, truth: Truth::T },
            JobSymbol::Agent { i: 3, layer: 2, sign: Sign::Plus, truth: Truth::F },
            JobSymbol::TruthAssign { kind: TaKind::A, i: 3, truth: Truth::F },
            JobSymbol::Clause { j: 4, truth: Truth::T, copy: 0 },
            JobSymbol::Clause { j: 4, truth: Truth::F, copy: 2 },
            JobSymbol::Dummy { class: DummyClass::R1000, ordinal: 7 },
            JobSymbol::Huge(HugeKind::VarClause { j: 4, i: 5, sign: Sign::Minus }),
            JobSymbol::Huge(HugeKind::VarAgent { i: 5, sign: Sign::Plus }),
            JobSymbol::Huge(HugeKind::LayerDec { i: 5, layer: 2, sign: Sign::Minus }),
            JobSymbol::Huge(HugeKind::AgentAgent { i: 3, k: 7 }),
            JobSymbol::Huge(HugeKind::VarDummy { i: 5, sign: Sign::Plus }),
            JobSymbol::Huge(HugeKind::VarAssign { i: 5, pair: TaPair::Bc }),
        ];
        for sym in samples {
            let text = sym.to_string();
            let back: JobSymbol = text.parse().unwrap();
            assert_eq!(back, sym, "{text}");
        }
    }

    #[test]
    fn example_strings() {
        assert_eq!(
            JobSymbol::Variable { i: 3, slot: 1, truth: Truth::T }.to_string(),
            "V i=3 k=1 T"
        );
        assert_eq!(
            JobSymbol::Huge(HugeKind::VarClause { j: 4, i: 5, sign: Sign::Minus }).to_string(),
            "HG varclause j=4 i=5 -"
        );
        assert_eq!(
            JobSymbol::Dummy { class: DummyClass::R1000, ordinal: 7 }.to_string(),
            "DU 1000r 7"
        );
    }
}
