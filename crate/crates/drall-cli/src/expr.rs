//! Arithmetic expressions over the curve parameter `s`.
//!
//! Grammar: numbers, named constants, `pi`, the parameter `s`, binary
//! `+ - * /`, unary `-`, `^` with a constant exponent, parentheses, and
//! the functions `sin cos tan sinh cosh tanh sqrt exp ln abs`. Named
//! constants are substituted at parse time from the supplied parameter
//! map. Evaluation is forward-mode to second order, so parsed curves
//! provide analytic first and second derivatives.

use std::collections::BTreeMap;
use std::fmt;

/// Parse failure with the byte position in the source text.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub pos: usize,
    /// Human-readable description.
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Value with first and second derivative with respect to `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    /// Value.
    pub v: f64,
    /// First derivative.
    pub d1: f64,
    /// Second derivative.
    pub d2: f64,
}

impl Jet2 {
    fn constant(v: f64) -> Self {
        Jet2 { v, d1: 0.0, d2: 0.0 }
    }

    fn var(s: f64) -> Self {
        Jet2 { v: s, d1: 1.0, d2: 0.0 }
    }

    fn add(self, o: Self) -> Self {
        Jet2 {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }

    fn sub(self, o: Self) -> Self {
        Jet2 {
            v: self.v - o.v,
            d1: self.d1 - o.d1,
            d2: self.d2 - o.d2,
        }
    }

    fn mul(self, o: Self) -> Self {
        Jet2 {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }

    fn div(self, o: Self) -> Self {
        let v = self.v / o.v;
        let d1 = (self.d1 - v * o.d1) / o.v;
        let d2 = (self.d2 - 2.0 * d1 * o.d1 - v * o.d2) / o.v;
        Jet2 { v, d1, d2 }
    }

    fn neg(self) -> Self {
        Jet2 {
            v: -self.v,
            d1: -self.d1,
            d2: -self.d2,
        }
    }

    /// Chain rule through `f` given `f(v)`, `f′(v)`, `f″(v)`.
    fn chain(self, f: f64, f1: f64, f2: f64) -> Self {
        Jet2 {
            v: f,
            d1: f1 * self.d1,
            d2: f2 * self.d1 * self.d1 + f1 * self.d2,
        }
    }

    fn powf(self, p: f64) -> Self {
        let f = self.v.powf(p);
        let f1 = p * self.v.powf(p - 1.0);
        let f2 = p * (p - 1.0) * self.v.powf(p - 2.0);
        self.chain(f, f1, f2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Sqrt,
    Exp,
    Ln,
    Abs,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "sqrt" => Func::Sqrt,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn apply(self, g: Jet2) -> Jet2 {
        let x = g.v;
        match self {
            Func::Sin => g.chain(x.sin(), x.cos(), -x.sin()),
            Func::Cos => g.chain(x.cos(), -x.sin(), -x.cos()),
            Func::Tan => {
                let sec2 = 1.0 / (x.cos() * x.cos());
                g.chain(x.tan(), sec2, 2.0 * x.tan() * sec2)
            }
            Func::Sinh => g.chain(x.sinh(), x.cosh(), x.sinh()),
            Func::Cosh => g.chain(x.cosh(), x.sinh(), x.cosh()),
            Func::Tanh => {
                let sech2 = 1.0 / (x.cosh() * x.cosh());
                g.chain(x.tanh(), sech2, -2.0 * x.tanh() * sech2)
            }
            Func::Sqrt => g.powf(0.5),
            Func::Exp => g.chain(x.exp(), x.exp(), x.exp()),
            Func::Ln => g.chain(x.ln(), 1.0 / x, -1.0 / (x * x)),
            Func::Abs => g.chain(x.abs(), x.signum(), 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    Var,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, f64),
    Call(Func, Box<Node>),
}

impl Node {
    fn eval(&self, s: f64) -> Jet2 {
        match self {
            Node::Num(v) => Jet2::constant(*v),
            Node::Var => Jet2::var(s),
            Node::Neg(a) => a.eval(s).neg(),
            Node::Add(a, b) => a.eval(s).add(b.eval(s)),
            Node::Sub(a, b) => a.eval(s).sub(b.eval(s)),
            Node::Mul(a, b) => a.eval(s).mul(b.eval(s)),
            Node::Div(a, b) => a.eval(s).div(b.eval(s)),
            Node::Pow(a, p) => a.eval(s).powf(*p),
            Node::Call(f, a) => f.apply(a.eval(s)),
        }
    }

    fn uses_var(&self) -> bool {
        match self {
            Node::Num(_) => false,
            Node::Var => true,
            Node::Neg(a) | Node::Pow(a, _) | Node::Call(_, a) => a.uses_var(),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.uses_var() || b.uses_var()
            }
        }
    }

    fn as_const(&self) -> Option<f64> {
        if self.uses_var() {
            None
        } else {
            Some(self.eval(0.0).v)
        }
    }
}

/// A parsed expression in `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    node: Node,
}

impl Expr {
    /// Value and first two derivatives at `s`.
    pub fn eval(&self, s: f64) -> Jet2 {
        self.node.eval(s)
    }

    /// Value at `s`.
    pub fn value(&self, s: f64) -> f64 {
        self.node.eval(s).v
    }

    /// Whether the expression is free of `s`.
    #[cfg(test)]
    pub fn is_constant(&self) -> bool {
        !self.node.uses_var()
    }

    /// The constant value, when the expression is free of `s`.
    pub fn as_const(&self) -> Option<f64> {
        self.node.as_const()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a BTreeMap<String, f64>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn number(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos < self.src.len() && (self.src[self.pos] | 0x20) == b'e' {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-')
            {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                // Not an exponent after all (e.g. a following identifier).
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<f64>() {
            Ok(v) => Ok(Node::Num(v)),
            Err(_) => self.err(start, format!("invalid number '{text}'")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.ident();
                if let Some(f) = Func::from_name(&name) {
                    self.expect(b'(')?;
                    let arg = self.expr()?;
                    self.expect(b')')?;
                    return Ok(Node::Call(f, Box::new(arg)));
                }
                match name.as_str() {
                    "s" => Ok(Node::Var),
                    "pi" => Ok(Node::Num(std::f64::consts::PI)),
                    _ => match self.params.get(&name) {
                        Some(v) => Ok(Node::Num(*v)),
                        None => self.err(start, format!("unknown identifier '{name}'")),
                    },
                }
            }
            Some(c) => self.err(self.pos, format!("unexpected character '{}'", c as char)),
            None => self.err(self.pos, "unexpected end of expression"),
        }
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp_pos = self.pos;
            let exp = self.unary()?;
            match exp.as_const() {
                Some(p) => Ok(Node::Pow(Box::new(base), p)),
                None => self.err(exp_pos, "exponent must be constant"),
            }
        } else {
            Ok(base)
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.eat(b'-') {
            Ok(Node::Neg(Box::new(self.unary()?)))
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut node = self.unary()?;
        loop {
            if self.eat(b'*') {
                node = Node::Mul(Box::new(node), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                node = Node::Div(Box::new(node), Box::new(self.unary()?));
            } else {
                return Ok(node);
            }
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut node = self.term()?;
        loop {
            if self.eat(b'+') {
                node = Node::Add(Box::new(node), Box::new(self.term()?));
            } else if self.eat(b'-') {
                node = Node::Sub(Box::new(node), Box::new(self.term()?));
            } else {
                return Ok(node);
            }
        }
    }
}

/// Parses a scalar expression; named constants resolve through `params`.
pub fn parse_scalar(src: &str, params: &BTreeMap<String, f64>) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        params,
    };
    let node = p.expr()?;
    if p.peek().is_some() {
        return p.err(p.pos, "trailing input after expression");
    }
    Ok(Expr { node })
}

/// Parses a 3-component vector expression `(e1, e2, e3)`.
pub fn parse_vec3(src: &str, params: &BTreeMap<String, f64>) -> Result<[Expr; 3], ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        params,
    };
    p.expect(b'(')?;
    let a = p.expr()?;
    p.expect(b',')?;
    let b = p.expr()?;
    p.expect(b',')?;
    let c = p.expr()?;
    p.expect(b')')?;
    if p.peek().is_some() {
        return p.err(p.pos, "trailing input after vector");
    }
    Ok([Expr { node: a }, Expr { node: b }, Expr { node: c }])
}
