//! Line-oriented scene files: one statement per line, `#` starts a
//! comment, `dim` comes first and names may only refer backwards.

use std::collections::HashMap;

use cga::conformal::{embed, EuclideanPoint, Space};
use cga::primitives::{
    circle_through, line_through, plane_through, round_from_center_radius, sphere_through,
    CircleOrLine,
};
use cga::transforms::{rotor, rotor_about_point, translator_by, Versor};
use cga::Multivector;

use crate::error::{Code, Diagnostic};

#[derive(Clone, Debug)]
pub enum Entity {
    Point(EuclideanPoint),
    /// Straight line, remembering the two points it was drawn through so
    /// it can serve as a ray.
    Line {
        blade: CircleOrLine,
        from: EuclideanPoint,
        to: EuclideanPoint,
    },
    Circle(Multivector),
    Plane(Multivector),
    Sphere(Multivector),
    Versor(Versor),
}

impl Entity {
    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Point(_) => "point",
            Entity::Line { .. } => "line",
            Entity::Circle(_) => "circle",
            Entity::Plane(_) => "plane",
            Entity::Sphere(_) => "sphere",
            Entity::Versor(_) => "versor",
        }
    }

    /// Blade representing the entity, if it is geometric.
    pub fn blade(&self) -> Option<Multivector> {
        match self {
            Entity::Point(p) => Some(embed(p).into_vector()),
            Entity::Line { blade, .. } => Some(blade.blade().clone()),
            Entity::Circle(b) | Entity::Plane(b) | Entity::Sphere(b) => Some(b.clone()),
            Entity::Versor(_) => None,
        }
    }

    /// Grade of the entity's blade.
    pub fn grade(&self) -> Option<usize> {
        match self {
            Entity::Point(_) => Some(1),
            Entity::Line { .. } | Entity::Circle(_) => Some(3),
            Entity::Plane(_) | Entity::Sphere(_) => Some(4),
            Entity::Versor(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scene {
    space: Space,
    names: Vec<String>,
    entities: HashMap<String, Entity>,
}

impl Scene {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn get(&self, name: &str) -> Option<&Entity> {
        self.entities.get(name)
    }

    /// Entities in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Entity)> {
        self.names
            .iter()
            .map(|n| (n.as_str(), &self.entities[n.as_str()]))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                tokens.push(token(content, s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push(token(content, s, content.len()));
    }
    tokens
}

fn token(line: &str, start: usize, end: usize) -> Token<'_> {
    Token {
        text: &line[start..end],
        column: line[..start].chars().count() + 1,
    }
}

struct Parser {
    space: Option<Space>,
    names: Vec<String>,
    entities: HashMap<String, Entity>,
    line: usize,
}

type Parsed<T> = Result<T, Diagnostic>;

impl Parser {
    fn error(&self, code: Code, column: usize, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            code,
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn space(&self, keyword: &Token) -> Parsed<Space> {
        self.space.ok_or_else(|| {
            self.error(
                Code::MissingDimension,
                keyword.column,
                format!("`{}` before `dim`", keyword.text),
            )
        })
    }

    fn number(&self, tok: &Token) -> Parsed<f64> {
        match tok.text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(self.error(
                Code::Syntax,
                tok.column,
                format!("expected a finite number, found `{}`", tok.text),
            )),
        }
    }

    fn numbers(&self, toks: &[Token]) -> Parsed<Vec<f64>> {
        toks.iter().map(|t| self.number(t)).collect()
    }

    fn new_name(&self, tok: &Token) -> Parsed<String> {
        let mut chars = tok.text.chars();
        let valid = chars
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(self.error(
                Code::Syntax,
                tok.column,
                format!("invalid name `{}`", tok.text),
            ));
        }
        if self.entities.contains_key(tok.text) {
            return Err(self.error(
                Code::DuplicateName,
                tok.column,
                format!("`{}` is already defined", tok.text),
            ));
        }
        Ok(tok.text.to_string())
    }

    fn lookup(&self, tok: &Token) -> Parsed<&Entity> {
        self.entities.get(tok.text).ok_or_else(|| {
            self.error(
                Code::UnknownReference,
                tok.column,
                format!("unknown name `{}`", tok.text),
            )
        })
    }

    fn point(&self, tok: &Token) -> Parsed<EuclideanPoint> {
        match self.lookup(tok)? {
            Entity::Point(p) => Ok(p.clone()),
            other => Err(self.error(
                Code::WrongKind,
                tok.column,
                format!("`{}` is a {}, expected a point", tok.text, other.kind()),
            )),
        }
    }

    fn points(&self, toks: &[Token]) -> Parsed<Vec<Multivector>> {
        toks.iter()
            .map(|t| self.point(t).map(|p| embed(&p).into_vector()))
            .collect()
    }

    fn arity(&self, toks: &[Token], expected: usize, usage: &str) -> Parsed<()> {
        if toks.len() == expected {
            Ok(())
        } else {
            let column = toks.get(expected).or(toks.last()).map_or(1, |t| t.column);
            Err(self.error(Code::Syntax, column, format!("usage: {usage}")))
        }
    }

    fn coords(&self, toks: &[Token], space: &Space) -> Parsed<Vec<f64>> {
        let values = self.numbers(toks)?;
        if values.len() != space.dim() {
            let column = toks.first().map_or(1, |t| t.column);
            return Err(self.error(
                Code::DimensionMismatch,
                column,
                format!(
                    "expected {} coordinates in a {}-dimensional scene, found {}",
                    space.dim(),
                    space.dim(),
                    values.len()
                ),
            ));
        }
        Ok(values)
    }

    fn require_space_3d(&self, keyword: &Token, space: &Space) -> Parsed<()> {
        if space.dim() == 3 {
            Ok(())
        } else {
            Err(self.error(
                Code::DimensionMismatch,
                keyword.column,
                format!("`{}` needs a 3-dimensional scene", keyword.text),
            ))
        }
    }

    fn geometric(&self, column: usize, result: cga::Result<Multivector>) -> Parsed<Multivector> {
        result.map_err(|e| {
            self.error(
                Code::Degenerate,
                column,
                format!("degenerate construction: {e}"),
            )
        })
    }

    fn statement(&mut self, toks: &[Token]) -> Parsed<()> {
        let keyword = toks[0];
        let args = &toks[1..];
        if keyword.text == "dim" {
            if self.space.is_some() {
                return Err(self.error(Code::Syntax, keyword.column, "`dim` given twice"));
            }
            self.arity(args, 1, "dim <2|3>")?;
            let space = match args[0].text {
                "2" => Space::new(2),
                "3" => Space::new(3),
                _ => {
                    return Err(self.error(
                        Code::DimensionMismatch,
                        args[0].column,
                        format!("dimension must be 2 or 3, found `{}`", args[0].text),
                    ))
                }
            };
            self.space = Some(space.expect("2 and 3 are supported"));
            return Ok(());
        }
        let space = self.space(&keyword)?;
        if args.is_empty() {
            return Err(self.error(
                Code::Syntax,
                keyword.column,
                format!("`{}` needs a name", keyword.text),
            ));
        }
        let name_tok = args[0];
        let name = self.new_name(&name_tok)?;
        let rest = &args[1..];
        let entity = match keyword.text {
            "point" => {
                if rest.len() < 2 || rest.len() > 3 {
                    self.arity(rest, space.dim(), "point <name> <x> <y> [<z>]")?;
                }
                let c = self.coords(rest, &space)?;
                return self.define(
                    name,
                    Entity::Point(EuclideanPoint::new(c).expect("checked")),
                );
            }
            "line" => {
                self.arity(rest, 2, "line <name> <point> <point>")?;
                let (from, to) = (self.point(&rest[0])?, self.point(&rest[1])?);
                let pts = self.points(rest)?;
                let blade = self.geometric(
                    name_tok.column,
                    line_through(&pts[0], &pts[1]).map(CircleOrLine::into_blade),
                )?;
                Entity::Line {
                    blade: CircleOrLine::new(blade).expect("constructed as a trivector"),
                    from,
                    to,
                }
            }
            "circle" => {
                if rest.first().map(|t| t.text) == Some("center") {
                    self.round_center_form(
                        &space,
                        rest,
                        "circle <name> center <x> <y> radius <r>",
                        2,
                    )?;
                    let (c, r) = self.center_radius(rest, &space)?;
                    Entity::Circle(
                        self.geometric(name_tok.column, round_from_center_radius(&c, r))?,
                    )
                } else {
                    self.arity(rest, 3, "circle <name> <point> <point> <point>")?;
                    let pts = self.points(rest)?;
                    Entity::Circle(self.geometric(
                        name_tok.column,
                        circle_through(&pts[0], &pts[1], &pts[2]).map(CircleOrLine::into_blade),
                    )?)
                }
            }
            "plane" => {
                self.require_space_3d(&keyword, &space)?;
                self.arity(rest, 3, "plane <name> <point> <point> <point>")?;
                let pts = self.points(rest)?;
                Entity::Plane(self.geometric(
                    name_tok.column,
                    plane_through(&pts[0], &pts[1], &pts[2]).map(|p| p.into_blade()),
                )?)
            }
            "sphere" => {
                self.require_space_3d(&keyword, &space)?;
                if rest.first().map(|t| t.text) == Some("center") {
                    self.round_center_form(
                        &space,
                        rest,
                        "sphere <name> center <x> <y> <z> radius <r>",
                        3,
                    )?;
                    let (c, r) = self.center_radius(rest, &space)?;
                    Entity::Sphere(
                        self.geometric(name_tok.column, round_from_center_radius(&c, r))?,
                    )
                } else {
                    self.arity(rest, 4, "sphere <name> <point> <point> <point> <point>")?;
                    let pts = self.points(rest)?;
                    Entity::Sphere(self.geometric(
                        name_tok.column,
                        sphere_through(&pts[0], &pts[1], &pts[2], &pts[3]).map(|s| s.into_blade()),
                    )?)
                }
            }
            "translator" => {
                let offset = self.coords(rest, &space)?;
                Entity::Versor(translator_by(&space, &offset).expect("finite Euclidean offset"))
            }
            "rotor" => {
                let usage = "rotor <name> <xy|yz|zx> <angle> [about <point>]";
                if rest.len() != 2 && rest.len() != 4 {
                    self.arity(rest, 2, usage)?;
                }
                let plane = self.rotation_plane(&rest[0], &space)?;
                let angle = self.number(&rest[1])?;
                let mut r = rotor(&plane, angle).expect("coordinate planes are unit");
                if rest.len() == 4 {
                    if rest[2].text != "about" {
                        return Err(self.error(
                            Code::Syntax,
                            rest[2].column,
                            format!("usage: {usage}"),
                        ));
                    }
                    let center = self.point(&rest[3])?;
                    r = rotor_about_point(&r, &center.to_vector())
                        .expect("point coordinates are Euclidean");
                }
                Entity::Versor(r)
            }
            other => {
                return Err(self.error(
                    Code::Syntax,
                    keyword.column,
                    format!("unknown statement `{other}`"),
                ))
            }
        };
        self.define(name, entity)
    }

    fn round_center_form(
        &self,
        space: &Space,
        rest: &[Token],
        usage: &str,
        dim: usize,
    ) -> Parsed<()> {
        if space.dim() != dim {
            return Err(self.error(
                Code::DimensionMismatch,
                rest[0].column,
                format!("center form needs a {dim}-dimensional scene"),
            ));
        }
        self.arity(rest, dim + 3, usage)?;
        if rest[dim + 1].text != "radius" {
            return Err(self.error(
                Code::Syntax,
                rest[dim + 1].column,
                format!("usage: {usage}"),
            ));
        }
        Ok(())
    }

    fn center_radius(&self, rest: &[Token], space: &Space) -> Parsed<(EuclideanPoint, f64)> {
        let d = space.dim();
        let c = self.coords(&rest[1..=d], space)?;
        let r = self.number(&rest[d + 2])?;
        if r <= 0.0 {
            return Err(self.error(
                Code::Degenerate,
                rest[d + 2].column,
                format!("radius must be positive, found {r}"),
            ));
        }
        Ok((EuclideanPoint::new(c).expect("checked"), r))
    }

    fn rotation_plane(&self, tok: &Token, space: &Space) -> Parsed<Multivector> {
        rotation_plane(tok.text, space).ok_or_else(|| {
            self.error(
                Code::Syntax,
                tok.column,
                format!("unknown rotation plane `{}`", tok.text),
            )
        })
    }

    fn define(&mut self, name: String, entity: Entity) -> Parsed<()> {
        self.names.push(name.clone());
        self.entities.insert(name, entity);
        Ok(())
    }
}

/// Oriented coordinate plane for `xy`, `yz` or `zx`.
pub fn rotation_plane(token: &str, space: &Space) -> Option<Multivector> {
    let (i, j) = match token {
        "xy" => (0, 1),
        "yz" => (1, 2),
        "zx" => (2, 0),
        _ => return None,
    };
    (j < space.dim() && i < space.dim()).then(|| space.euclidean_plane(i, j))
}

pub fn parse_scene(text: &str) -> Result<Scene, Diagnostic> {
    let mut parser = Parser {
        space: None,
        names: Vec::new(),
        entities: HashMap::new(),
        line: 0,
    };
    for (i, line) in text.lines().enumerate() {
        parser.line = i + 1;
        let toks = tokenize(line);
        if toks.is_empty() {
            continue;
        }
        parser.statement(&toks)?;
    }
    let space = parser.space.ok_or(Diagnostic {
        code: Code::MissingDimension,
        line: parser.line.max(1),
        column: 1,
        message: "scene has no `dim` statement".into(),
    })?;
    Ok(Scene {
        space,
        names: parser.names,
        entities: parser.entities,
    })
}
