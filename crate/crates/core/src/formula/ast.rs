use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

/// Formulas over (∧, ∨, ∼, *, t, ⊥, ⊤) plus the derived connectives, which
/// [`expand`](super::expand) rewrites into the primitive signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "node")]
pub enum Formula {
    Var {
        name: String,
    },
    Bot,
    Top,
    And {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    Or {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    Neg {
        arg: Box<Formula>,
    },
    Star {
        arg: Box<Formula>,
    },
    T {
        arg: Box<Formula>,
    },
    // sugar
    Nabla {
        arg: Box<Formula>,
    },
    Triangle {
        arg: Box<Formula>,
    },
    CycImp {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    Arrow {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    Iff {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    Circ {
        arg: Box<Formula>,
    },
    Delta {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    TPow {
        power: u64,
        arg: Box<Formula>,
    },
}

pub const RESERVED: &[&str] = &["bot", "top", "t", "nabla", "tri", "o", "delta"];

pub fn is_valid_var(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&name)
}

pub fn var(name: &str) -> Formula {
    Formula::Var {
        name: name.to_string(),
    }
}

macro_rules! binary {
    ($f:ident, $v:ident) => {
        pub fn $f(l: Formula, r: Formula) -> Formula {
            Formula::$v {
                left: Box::new(l),
                right: Box::new(r),
            }
        }
    };
}

macro_rules! unary {
    ($f:ident, $v:ident) => {
        pub fn $f(a: Formula) -> Formula {
            Formula::$v { arg: Box::new(a) }
        }
    };
}

binary!(and, And);
binary!(or, Or);
binary!(cyc_imp, CycImp);
binary!(arrow, Arrow);
binary!(iff, Iff);
binary!(delta, Delta);
unary!(neg, Neg);
unary!(star, Star);
unary!(t, T);
unary!(nabla, Nabla);
unary!(tri, Triangle);
unary!(circ, Circ);

pub fn tpow(power: u64, a: Formula) -> Formula {
    Formula::TPow {
        power,
        arg: Box::new(a),
    }
}

impl Formula {
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Var { .. } | Bot | Top => vec![],
            And { left, right }
            | Or { left, right }
            | CycImp { left, right }
            | Arrow { left, right }
            | Iff { left, right }
            | Delta { left, right } => vec![left, right],
            Neg { arg }
            | Star { arg }
            | T { arg }
            | Nabla { arg }
            | Triangle { arg }
            | Circ { arg }
            | TPow { arg, .. } => {
                vec![arg]
            }
        }
    }

    /// Variables in name order.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Formula::Var { name } = self {
            out.insert(name.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn is_primitive(&self) -> bool {
        use Formula::*;
        matches!(
            self,
            Var { .. } | Bot | Top | And { .. } | Or { .. } | Neg { .. } | Star { .. } | T { .. }
        ) && self.children().iter().all(|c| c.is_primitive())
    }

    /// Replaces variables by formulas; unmapped variables stay.
    pub fn substitute(&self, map: &dyn Fn(&str) -> Option<Formula>) -> Formula {
        use Formula::*;
        let s = |f: &Formula| Box::new(f.substitute(map));
        match self {
            Var { name } => map(name).unwrap_or_else(|| self.clone()),
            Bot | Top => self.clone(),
            And { left, right } => And {
                left: s(left),
                right: s(right),
            },
            Or { left, right } => Or {
                left: s(left),
                right: s(right),
            },
            CycImp { left, right } => CycImp {
                left: s(left),
                right: s(right),
            },
            Arrow { left, right } => Arrow {
                left: s(left),
                right: s(right),
            },
            Iff { left, right } => Iff {
                left: s(left),
                right: s(right),
            },
            Delta { left, right } => Delta {
                left: s(left),
                right: s(right),
            },
            Neg { arg } => Neg { arg: s(arg) },
            Star { arg } => Star { arg: s(arg) },
            T { arg } => T { arg: s(arg) },
            Nabla { arg } => Nabla { arg: s(arg) },
            Triangle { arg } => Triangle { arg: s(arg) },
            Circ { arg } => Circ { arg: s(arg) },
            TPow { power, arg } => TPow {
                power: *power,
                arg: s(arg),
            },
        }
    }

    /// Binding strength used by the printer: 0 for `<->`/`->`, 1 for `~>`,
    /// 2 for `\/`, 3 for `/\`, 4 for prefix `~`, 5 for postfix `*` and atoms.
    fn level(&self) -> u8 {
        use Formula::*;
        match self {
            Iff { .. } | Arrow { .. } => 0,
            CycImp { .. } => 1,
            Or { .. } => 2,
            And { .. } => 3,
            Neg { .. } => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        use Formula::*;
        match self {
            Var { name } => write!(f, "{name}"),
            Bot => write!(f, "bot"),
            Top => write!(f, "top"),
            // left-associative levels
            Iff { left, right }
            | Arrow { left, right }
            | Or { left, right }
            | And { left, right } => {
                let op = match self {
                    Iff { .. } => "<->",
                    Arrow { .. } => "->",
                    Or { .. } => "\\/",
                    _ => "/\\",
                };
                let l = self.level();
                left.write_at(f, l)?;
                write!(f, " {op} ")?;
                right.write_at(f, l + 1)
            }
            CycImp { left, right } => {
                left.write_at(f, 2)?;
                write!(f, " ~> ")?;
                right.write_at(f, 1)
            }
            Neg { arg } => {
                write!(f, "~")?;
                arg.write_at(f, 4)
            }
            Star { arg } => {
                arg.write_at(f, 5)?;
                write!(f, "*")
            }
            T { arg } => call(f, "t", &[arg]),
            TPow { power, arg } => call(f, &format!("t^{power}"), &[arg]),
            Nabla { arg } => call(f, "nabla", &[arg]),
            Triangle { arg } => call(f, "tri", &[arg]),
            Circ { arg } => call(f, "o", &[arg]),
            Delta { left, right } => call(f, "delta", &[left, right]),
        }
    }
}

fn call(f: &mut fmt::Formatter<'_>, name: &str, args: &[&Formula]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        a.write_at(f, 0)?;
    }
    write!(f, ")")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Random formula over `vars`, every node kind reachable. Depth counts nodes
/// on the longest branch.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    vars: &[&str],
    depth: usize,
    sugar: bool,
) -> Formula {
    if depth <= 1 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::Bot,
            1 => Formula::Top,
            _ => var(vars[rng.gen_range(0..vars.len())]),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, vars, depth - 1, sugar);
    let kinds = if sugar { 13 } else { 5 };
    match rng.gen_range(0..kinds) {
        0 => and(sub(rng), sub(rng)),
        1 => or(sub(rng), sub(rng)),
        2 => neg(sub(rng)),
        3 => star(sub(rng)),
        4 => t(sub(rng)),
        5 => nabla(sub(rng)),
        6 => tri(sub(rng)),
        7 => cyc_imp(sub(rng), sub(rng)),
        8 => arrow(sub(rng), sub(rng)),
        9 => iff(sub(rng), sub(rng)),
        10 => circ(sub(rng)),
        11 => delta(sub(rng), sub(rng)),
        _ => tpow(rng.gen_range(0..6), sub(rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing() {
        let p = || var("p");
        let q = || var("q");
        assert_eq!(and(p(), neg(p())).to_string(), "p /\\ ~p");
        assert_eq!(star(tpow(3, p())).to_string(), "t^3(p)*");
        assert_eq!(star(neg(p())).to_string(), "(~p)*");
        assert_eq!(neg(star(p())).to_string(), "~p*");
        assert_eq!(cyc_imp(cyc_imp(p(), q()), p()).to_string(), "(p ~> q) ~> p");
        assert_eq!(cyc_imp(p(), cyc_imp(q(), p())).to_string(), "p ~> q ~> p");
        assert_eq!(and(p(), and(q(), p())).to_string(), "p /\\ (q /\\ p)");
        assert_eq!(
            iff(arrow(p(), q()), Formula::Top).to_string(),
            "p -> q <-> top"
        );
    }

    #[test]
    fn var_names() {
        assert!(is_valid_var("p_1"));
        assert!(is_valid_var("to"));
        assert!(!is_valid_var("t"));
        assert!(!is_valid_var("P"));
        assert!(!is_valid_var("1p"));
    }

    #[test]
    fn json_is_node_tagged() {
        let f = and(var("p"), Formula::Bot);
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(
            j,
            r#"{"node":"And","left":{"node":"Var","name":"p"},"right":{"node":"Bot"}}"#
        );
        assert_eq!(serde_json::from_str::<Formula>(&j).unwrap(), f);
    }
}
