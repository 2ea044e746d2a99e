//! Linear integer expressions, used as the expression language of the
//! translated programs. Sequences of assignments collapse into one linear
//! expression per variable.

use super::imp::Expr;
use super::int::Int;

/// `c1*v1 + ... + cn*vn + constant`, variables in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lin {
    pub terms: Vec<(usize, Int)>,
    pub constant: Int,
}

impl Lin {
    pub fn var(k: usize) -> Lin {
        Lin {
            terms: vec![(k, Int::from(1))],
            constant: Int::zero(),
        }
    }

    pub fn num(n: Int) -> Lin {
        Lin {
            terms: Vec::new(),
            constant: n,
        }
    }

    pub fn is_var(&self, k: usize) -> bool {
        self.constant.is_zero() && self.terms.len() == 1 && self.terms[0] == (k, Int::from(1))
    }

    fn combine(&self, o: &Lin, sign: &Int) -> Lin {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let c = c * sign;
            match terms.iter_mut().find(|(j, _)| j == k) {
                Some((_, d)) => *d = &*d + &c,
                None => terms.push((*k, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Lin {
            terms,
            constant: &self.constant + &(&o.constant * sign),
        }
    }

    pub fn add(&self, o: &Lin) -> Lin {
        self.combine(o, &Int::from(1))
    }

    pub fn sub(&self, o: &Lin) -> Lin {
        self.combine(o, &Int::from(-1))
    }

    /// `e` with each variable `k` replaced by `env[k]`.
    pub fn from_expr(e: &Expr, env: &[Lin]) -> Lin {
        match e {
            Expr::Num(n) => Lin::num(n.clone()),
            Expr::Var(k) => env[*k].clone(),
            Expr::Neg(e) => Lin::num(Int::zero()).sub(&Lin::from_expr(e, env)),
            Expr::Add(a, b) => Lin::from_expr(a, env).add(&Lin::from_expr(b, env)),
            Expr::Sub(a, b) => Lin::from_expr(a, env).sub(&Lin::from_expr(b, env)),
        }
    }

    pub fn eval(&self, state: &[Int]) -> Int {
        let mut acc = self.constant.clone();
        for (k, c) in &self.terms {
            acc = match c {
                Int::Small(1) => &acc + &state[*k],
                Int::Small(-1) => &acc - &state[*k],
                _ => &acc + &(c * &state[*k]),
            };
        }
        acc
    }

    /// Compact source form, e.g. `x+1`, `z-x`, `2*y-3`.
    pub fn show(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if neg {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            if mag != Int::from(1) {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&names[*k]);
        }
        if self.terms.is_empty() {
            s.push_str(&self.constant.to_string());
        } else if !self.constant.is_zero() {
            if !self.constant.is_negative() {
                s.push('+');
            }
            s.push_str(&self.constant.to_string());
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::translate::imp::parse_imp;
    use crate::translate::imp::Stmt;

    fn names() -> Vec<String> {
        ["x", "y", "z"].map(String::from).to_vec()
    }

    fn assigns(src: &str) -> Vec<Lin> {
        let p = parse_imp(&format!("var x := 0; y := 0; z := 0; L: {src}; stop")).unwrap();
        let mut env: Vec<Lin> = (0..3).map(Lin::var).collect();
        for s in &p.blocks[0].stmts {
            if let Stmt::Assign(k, e) = s {
                env[*k] = Lin::from_expr(e, &env);
            }
        }
        env
    }

    #[test]
    fn sequential_assignments_compose() {
        let env = assigns("x := x+1; x := x+1");
        assert_eq!(env[0].show(&names()), "x+2");
        let env = assigns("z := z-x");
        assert_eq!(env[2].show(&names()), "z-x");
        let env = assigns("y := x+y; x := y - x");
        assert_eq!(env[0].show(&names()), "y");
        let env = assigns("x := x + x - 3; y := 0 - y");
        assert_eq!(env[0].show(&names()), "2*x-3");
        assert_eq!(env[1].show(&names()), "-y");
        let env = assigns("x := x - x");
        assert_eq!(env[0].show(&names()), "0");
        assert!(assigns("y := y")[1].is_var(1));
    }

    #[test]
    fn evaluation_agrees_with_source() {
        let state: Vec<Int> = [4, -7, 9].map(Int::from).to_vec();
        let env = assigns("x := x + y - 3; z := z - x + x + 5");
        assert_eq!(env[0].eval(&state), Int::from(-6));
        assert_eq!(env[2].eval(&state), Int::from(14));
    }
}
