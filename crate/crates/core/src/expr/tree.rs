use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{parse, Environment, ExprError, Rational, Scalar, BUILTINS};
use crate::Chart;

/// Expression tree as written by the user. Coordinates are chart indices.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Coord(usize),
    Apply { name: String, order: u32, arg: Box<Expr> },
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn parse(text: &str, chart: &Chart) -> Result<Expr, ExprError> {
        parse::parse(text, chart)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Num(Rational::from_integer(n.into()))
    }

    pub fn is_literal_zero(&self) -> bool {
        matches!(self, Expr::Num(q) if q.is_zero())
    }

    pub fn canonicalize(&self) -> Result<Scalar, ExprError> {
        Ok(match self {
            Expr::Num(q) => Scalar::from_rational(q.clone()),
            Expr::Coord(i) => Scalar::coord(*i),
            Expr::Apply { name, order, arg } => Scalar::apply(name, *order, arg.canonicalize()?),
            Expr::Add(xs) => {
                let mut acc = Scalar::zero();
                for x in xs {
                    acc = &acc + &x.canonicalize()?;
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut acc = Scalar::one();
                for x in xs {
                    acc = &acc * &x.canonicalize()?;
                }
                acc
            }
            Expr::Neg(x) => -x.canonicalize()?,
            Expr::Div(a, b) => a.canonicalize()?.checked_div(&b.canonicalize()?)?,
            Expr::Pow(a, e) => a.canonicalize()?.pow(*e)?,
        })
    }

    /// Decides whether the expression is identically zero.
    pub fn is_zero(&self) -> Result<bool, ExprError> {
        Ok(self.canonicalize()?.is_zero())
    }

    pub fn eval(&self, env: &Environment) -> Result<Rational, ExprError> {
        Ok(match self {
            Expr::Num(q) => q.clone(),
            Expr::Coord(i) => env.coord(*i).cloned().ok_or(ExprError::Unbound(format!("coordinate #{i}")))?,
            Expr::Apply { name, order, arg } => {
                let v = arg.eval(env)?;
                Scalar::apply(name, *order, Scalar::from_rational(v)).eval(env)?
            }
            Expr::Add(xs) => xs.iter().map(|x| x.eval(env)).sum::<Result<Rational, _>>()?,
            Expr::Mul(xs) => xs.iter().map(|x| x.eval(env)).product::<Result<Rational, _>>()?,
            Expr::Neg(x) => -x.eval(env)?,
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                if d.is_zero() {
                    return Err(ExprError::DivisionByZero);
                }
                a.eval(env)? / d
            }
            Expr::Pow(a, e) => {
                let v = a.eval(env)?;
                if v.is_zero() && *e < 0 {
                    return Err(ExprError::DivisionByZero);
                }
                let k = usize::try_from(e.unsigned_abs()).map_err(|_| ExprError::ExponentTooLarge)?;
                let p = num_traits::pow(v, k);
                if *e < 0 {
                    p.recip()
                } else {
                    p
                }
            }
        })
    }

    /// Symbolic derivative on the tree, with trivial zero/one pruning.
    pub fn differentiate(&self, k: usize) -> Expr {
        match self {
            Expr::Num(_) => Expr::int(0),
            Expr::Coord(i) => Expr::int(i64::from(*i == k)),
            Expr::Apply { name, order, arg } => {
                let da = arg.differentiate(k);
                if da.is_literal_zero() {
                    return Expr::int(0);
                }
                let outer = if BUILTINS.contains(&name.as_str()) {
                    match name.as_str() {
                        "sin" => Expr::Apply { name: "cos".into(), order: 0, arg: arg.clone() },
                        "cos" => Expr::Neg(Box::new(Expr::Apply { name: "sin".into(), order: 0, arg: arg.clone() })),
                        _ => self.clone(),
                    }
                } else {
                    Expr::Apply { name: name.clone(), order: order + 1, arg: arg.clone() }
                };
                mul(vec![outer, da])
            }
            Expr::Add(xs) => add(xs.iter().map(|x| x.differentiate(k)).collect()),
            Expr::Mul(xs) => add((0..xs.len())
                .map(|i| {
                    let mut fs = xs.clone();
                    fs[i] = xs[i].differentiate(k);
                    mul(fs)
                })
                .collect()),
            Expr::Neg(x) => neg(x.differentiate(k)),
            Expr::Div(a, b) => {
                let (da, db) = (a.differentiate(k), b.differentiate(k));
                let top = add(vec![mul(vec![da, (**b).clone()]), neg(mul(vec![(**a).clone(), db]))]);
                if top.is_literal_zero() {
                    return Expr::int(0);
                }
                Expr::Div(Box::new(top), Box::new(Expr::Pow(b.clone(), 2)))
            }
            Expr::Pow(a, e) => {
                let da = a.differentiate(k);
                if *e == 0 {
                    return Expr::int(0);
                }
                let inner = if *e == 1 { Expr::int(1) } else { Expr::Pow(a.clone(), e - 1) };
                mul(vec![Expr::int(*e), inner, da])
            }
        }
    }

    pub fn display<'a>(&'a self, chart: &'a Chart) -> ExprDisplay<'a> {
        ExprDisplay { e: self, chart }
    }
}

fn add(xs: Vec<Expr>) -> Expr {
    let xs: Vec<Expr> = xs.into_iter().filter(|x| !x.is_literal_zero()).collect();
    match xs.len() {
        0 => Expr::int(0),
        1 => xs.into_iter().next().unwrap(),
        _ => Expr::Add(xs),
    }
}

fn mul(xs: Vec<Expr>) -> Expr {
    if xs.iter().any(Expr::is_literal_zero) {
        return Expr::int(0);
    }
    let xs: Vec<Expr> = xs.into_iter().filter(|x| !matches!(x, Expr::Num(q) if q.is_one())).collect();
    match xs.len() {
        0 => Expr::int(1),
        1 => xs.into_iter().next().unwrap(),
        _ => Expr::Mul(xs),
    }
}

fn neg(x: Expr) -> Expr {
    if x.is_literal_zero() {
        x
    } else {
        Expr::Neg(Box::new(x))
    }
}

pub struct ExprDisplay<'a> {
    e: &'a Expr,
    chart: &'a Chart,
}

// 0 sum, 1 product, 2 unary, 3 power, 4 atom
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(_) => 0,
        Expr::Mul(_) | Expr::Div(..) => 1,
        Expr::Num(q) if !q.is_integer() || q.is_negative() => 1,
        Expr::Neg(_) => 2,
        Expr::Pow(..) => 3,
        _ => 4,
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, chart: &Chart, min: u8) -> fmt::Result {
    let paren = prec(e) < min;
    if paren {
        write!(f, "(")?;
    }
    match e {
        Expr::Num(q) => {
            if q.is_integer() {
                write!(f, "{}", q.numer())?
            } else {
                write!(f, "{}/{}", q.numer(), q.denom())?
            }
        }
        Expr::Coord(i) => write!(f, "{}", chart.coord_name(*i))?,
        Expr::Apply { name, order, arg } => {
            write!(f, "{name}{}(", "'".repeat(*order as usize))?;
            write_expr(f, arg, chart, 0)?;
            write!(f, ")")?;
        }
        Expr::Add(xs) => {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                write_expr(f, x, chart, 1)?;
            }
        }
        Expr::Mul(xs) => {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                write_expr(f, x, chart, 2)?;
            }
        }
        Expr::Neg(x) => {
            write!(f, "-")?;
            write_expr(f, x, chart, 3)?;
        }
        Expr::Div(a, b) => {
            write_expr(f, a, chart, 1)?;
            write!(f, "/")?;
            write_expr(f, b, chart, 2)?;
        }
        Expr::Pow(a, k) => {
            write_expr(f, a, chart, 4)?;
            write!(f, "^{k}")?;
        }
    }
    if paren {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self.e, self.chart, 0)
    }
}
