//! Query verbs over a parsed scene. Each query yields plain text and the
//! same data as JSON.

use cga::bounce::{trace, Ray};
use cga::conformal::{distance, embed, normalize_point, EuclideanPoint};
use cga::meet::{meet, Endpoint, MeetOutcome};
use cga::primitives::{
    angle_between_lines, circle_center_radius, circle_normal, circle_through, flatness, line_data,
    plane_data, sphere_center_radius, sphere_through, straightness, CircleOrLine, SphereOrPlane,
};
use cga::transforms::{reflect_in, rotor, rotor_about_point, tangent_plane, translator_by, Versor};
use cga::Multivector;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{number, snap, tuple};
use crate::scene::{rotation_plane, Entity, Scene};

/// Default threshold for `collinear` and `coplanar`.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Self { text, json }
    }
}

struct Ctx<'a> {
    scene: &'a Scene,
    query: &'a str,
    eps: f64,
}

type Answer = Result<Output, CliError>;

fn coords_json(c: &[f64]) -> Value {
    Value::from(c.iter().map(|v| snap(*v)).collect::<Vec<_>>())
}

impl Ctx<'_> {
    fn fail(&self, message: impl Into<String>) -> CliError {
        CliError::Query {
            query: self.query.to_string(),
            message: message.into(),
        }
    }

    fn geo<T>(&self, r: cga::Result<T>) -> Result<T, CliError> {
        r.map_err(|source| CliError::Geometry {
            query: self.query.to_string(),
            source,
        })
    }

    fn entity(&self, name: &str) -> Result<&Entity, CliError> {
        self.scene
            .get(name)
            .ok_or_else(|| self.fail(format!("unknown name `{name}`")))
    }

    fn point(&self, name: &str) -> Result<&EuclideanPoint, CliError> {
        match self.entity(name)? {
            Entity::Point(p) => Ok(p),
            e => Err(self.fail(format!("`{name}` is a {}, expected a point", e.kind()))),
        }
    }

    fn points(&self, names: &[&str]) -> Result<Vec<Multivector>, CliError> {
        names.iter().map(|n| self.point(n).map(up)).collect()
    }

    fn blade(&self, name: &str, allowed: &[&str]) -> Result<(Multivector, usize), CliError> {
        let e = self.entity(name)?;
        if !allowed.contains(&e.kind()) {
            return Err(self.fail(format!(
                "`{name}` is a {}, expected {}",
                e.kind(),
                allowed.join(" or ")
            )));
        }
        Ok((
            e.blade().expect("geometric kinds"),
            e.grade().expect("geometric kinds"),
        ))
    }

    /// Kinds that are hyperplanes or hyperspheres of the scene.
    fn mirror_kinds(&self) -> &'static [&'static str] {
        if self.scene.dim() == 2 {
            &["line", "circle"]
        } else {
            &["plane", "sphere"]
        }
    }

    fn eps(&self, arg: Option<&str>) -> Result<f64, CliError> {
        match arg {
            None => Ok(self.eps),
            Some(s) => match s.parse::<f64>() {
                Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
                _ => Err(self.fail(format!("invalid tolerance `{s}`"))),
            },
        }
    }

    fn number(&self, s: &str) -> Result<f64, CliError> {
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(self.fail(format!("expected a number, found `{s}`"))),
        }
    }

    fn arity(
        &self,
        args: &[&str],
        range: std::ops::RangeInclusive<usize>,
        usage: &str,
    ) -> Result<(), CliError> {
        if range.contains(&args.len()) {
            Ok(())
        } else {
            Err(self.fail(format!("usage: {usage}")))
        }
    }

    /// Text and JSON for a blade of the given grade, normalised.
    fn describe(&self, blade: &Multivector, grade: usize) -> Answer {
        let dim = self.scene.dim();
        match grade {
            1 => {
                let p = self.geo(normalize_point(blade))?.to_euclidean();
                Ok(Output::new(
                    format!("point: {}", tuple(p.coords())),
                    json!({"kind": "point", "point": coords_json(p.coords())}),
                ))
            }
            3 => {
                let l = self.geo(CircleOrLine::new(blade.clone()))?;
                if l.is_flat() {
                    let ld = self.geo(line_data(&l))?;
                    Ok(line_output(&ld.point, &ld.direction))
                } else {
                    let cr = self.geo(circle_center_radius(&l))?;
                    let mut text = format!(
                        "circle: center {} radius {}",
                        tuple(cr.center.coords()),
                        number(cr.radius)
                    );
                    let mut j = json!({
                        "kind": "circle",
                        "center": coords_json(cr.center.coords()),
                        "radius": cr.radius,
                    });
                    if dim == 3 {
                        let normal = self.geo(circle_normal(&l))?;
                        text.push_str(&format!(" normal {}", tuple(&normal)));
                        j["normal"] = coords_json(&normal);
                    }
                    Ok(Output::new(text, j))
                }
            }
            4 => {
                let s = self.geo(SphereOrPlane::new(blade.clone()))?;
                if s.is_flat() {
                    let pd = self.geo(plane_data(s.blade()))?;
                    Ok(Output::new(
                        format!(
                            "plane: point {} normal {}",
                            tuple(pd.point.coords()),
                            tuple(&pd.normal)
                        ),
                        json!({
                            "kind": "plane",
                            "point": coords_json(pd.point.coords()),
                            "normal": coords_json(&pd.normal),
                        }),
                    ))
                } else {
                    let cr = self.geo(sphere_center_radius(&s))?;
                    Ok(Output::new(
                        format!(
                            "sphere: center {} radius {}",
                            tuple(cr.center.coords()),
                            number(cr.radius)
                        ),
                        json!({
                            "kind": "sphere",
                            "center": coords_json(cr.center.coords()),
                            "radius": cr.radius,
                        }),
                    ))
                }
            }
            _ => Err(self.fail(format!("cannot describe a grade-{grade} blade"))),
        }
    }

    fn dist(&self, args: &[&str]) -> Answer {
        self.arity(args, 2..=2, "dist <point> <point>")?;
        let pts = self.points(args)?;
        let d = self.geo(distance(&pts[0], &pts[1]))?;
        Ok(Output::new(number(d), json!({"distance": d})))
    }

    fn circum(&self, args: &[&str]) -> Answer {
        let dim = self.scene.dim();
        if dim == 2 {
            self.arity(args, 3..=3, "circum <point> <point> <point>")?;
        } else {
            self.arity(args, 3..=4, "circum <point> <point> <point> [<point>]")?;
        }
        let pts = self.points(args)?;
        if pts.len() == 3 {
            let l = self.geo(circle_through(&pts[0], &pts[1], &pts[2]))?;
            self.describe(l.blade(), 3)
        } else {
            let s = self.geo(sphere_through(&pts[0], &pts[1], &pts[2], &pts[3]))?;
            self.describe(s.blade(), 4)
        }
    }

    fn intersect(&self, args: &[&str]) -> Answer {
        self.arity(args, 2..=2, "intersect <a> <b>")?;
        let kinds: &[&str] = if self.scene.dim() == 2 {
            &["line", "circle"]
        } else {
            &["line", "circle", "plane", "sphere"]
        };
        let (a, ga) = self.blade(args[0], kinds)?;
        let (b, gb) = self.blade(args[1], kinds)?;
        if self.scene.dim() == 3 && ga == 3 && gb == 3 {
            return Err(self.fail("two lines or circles in space have no full-space meet; intersect each with a plane or sphere"));
        }
        let outcome = self.geo(meet(&a, &b))?;
        match &outcome {
            MeetOutcome::TwoPoints { points, .. } => {
                let mut pts: Vec<&Endpoint> = points.iter().collect();
                pts.sort_by(|x, y| endpoint_order(x, y));
                let text: Vec<String> = pts.iter().map(|p| endpoint_text(p)).collect();
                Ok(Output::new(
                    format!("pair: {}", text.join(" ")),
                    json!({"kind": "pair", "points": pts.iter().map(|p| endpoint_json(p)).collect::<Vec<_>>()}),
                ))
            }
            MeetOutcome::TangentPoint { point, .. } => Ok(Output::new(
                format!("tangent: {}", endpoint_text(point)),
                json!({"kind": "tangent", "point": endpoint_json(point)}),
            )),
            MeetOutcome::Empty { .. } => Ok(Output::new("empty".into(), json!({"kind": "empty"}))),
            MeetOutcome::Circle { raw, .. } => self.describe(raw, 3),
            MeetOutcome::Line { line, .. } => Ok(line_output(&line.point, &line.direction)),
        }
    }

    fn reflect(&self, args: &[&str]) -> Answer {
        self.arity(args, 2..=2, "reflect <object> <mirror>")?;
        let (l, grade) = self.blade(args[0], &["point", "line", "circle", "plane", "sphere"])?;
        let (p, _) = self.blade(args[1], self.mirror_kinds())?;
        let reflected = self.geo(reflect_in(&l, &p))?;
        self.describe(&reflected, grade)
    }

    fn tangent(&self, args: &[&str]) -> Answer {
        self.arity(args, 2..=2, "tangent <round> <point>")?;
        let round_kind: &[&str] = if self.scene.dim() == 2 {
            &["circle"]
        } else {
            &["sphere"]
        };
        let (s, grade) = self.blade(args[0], round_kind)?;
        let x = up(self.point(args[1])?);
        let plane = self.geo(tangent_plane(&s, &x))?;
        self.describe(&plane, grade)
    }

    fn angle(&self, args: &[&str]) -> Answer {
        self.arity(args, 2..=2, "angle <line> <line>")?;
        let (a, _) = self.blade(args[0], &["line", "circle"])?;
        let (b, _) = self.blade(args[1], &["line", "circle"])?;
        let l1 = self.geo(CircleOrLine::new(a))?;
        let l2 = self.geo(CircleOrLine::new(b))?;
        let theta = self.geo(angle_between_lines(&l1, &l2))?;
        Ok(Output::new(number(theta), json!({"angle": theta})))
    }

    fn collinear(&self, args: &[&str]) -> Answer {
        self.arity(args, 3..=4, "collinear <point> <point> <point> [eps]")?;
        let eps = self.eps(args.get(3).copied())?;
        let pts = self.points(&args[..3])?;
        let measure = match circle_through(&pts[0], &pts[1], &pts[2]) {
            Ok(l) => Some(self.geo(straightness(&l))?),
            // a repeated point leaves at most two distinct points
            Err(cga::Error::Degenerate) => None,
            Err(e) => return self.geo(Err(e)),
        };
        Ok(verdict("straightness", measure, eps))
    }

    fn coplanar(&self, args: &[&str]) -> Answer {
        if self.scene.dim() != 3 {
            return Err(self.fail("coplanar needs a 3-dimensional scene"));
        }
        self.arity(
            args,
            4..=5,
            "coplanar <point> <point> <point> <point> [eps]",
        )?;
        let eps = self.eps(args.get(4).copied())?;
        let pts = self.points(&args[..4])?;
        let measure = match sphere_through(&pts[0], &pts[1], &pts[2], &pts[3]) {
            Ok(s) => Some(self.geo(flatness(&s))?),
            // four concyclic points (or a repeated one) lie in a plane
            Err(cga::Error::Degenerate) => None,
            Err(e) => return self.geo(Err(e)),
        };
        Ok(verdict("flatness", measure, eps))
    }

    fn transformable(&self, name: &str) -> Result<(Multivector, usize), CliError> {
        self.blade(name, &["point", "line", "circle", "plane", "sphere"])
    }

    fn translate(&self, args: &[&str]) -> Answer {
        let dim = self.scene.dim();
        if args.len() != dim + 1 {
            return Err(self.fail(if dim == 2 {
                "usage: translate <object> <dx> <dy>"
            } else {
                "usage: translate <object> <dx> <dy> <dz>"
            }));
        }
        let (blade, grade) = self.transformable(args[0])?;
        let offset = args[1..]
            .iter()
            .map(|a| self.number(a))
            .collect::<Result<Vec<_>, _>>()?;
        let t = self.geo(translator_by(self.scene.space(), &offset))?;
        self.describe(&t.apply(&blade), grade)
    }

    fn rotate(&self, args: &[&str]) -> Answer {
        let usage = "rotate <object> <xy|yz|zx> <angle> [about <point>]";
        if args.len() != 3 && args.len() != 5 {
            return Err(self.fail(format!("usage: {usage}")));
        }
        let (blade, grade) = self.transformable(args[0])?;
        let plane = rotation_plane(args[1], self.scene.space())
            .ok_or_else(|| self.fail(format!("unknown rotation plane `{}`", args[1])))?;
        let angle = self.number(args[2])?;
        let mut r = self.geo(rotor(&plane, angle))?;
        if args.len() == 5 {
            if args[3] != "about" {
                return Err(self.fail(format!("usage: {usage}")));
            }
            let center = self.point(args[4])?;
            r = self.geo(rotor_about_point(&r, &center.to_vector()))?;
        }
        self.describe(&r.apply(&blade), grade)
    }

    fn apply(&self, args: &[&str]) -> Answer {
        self.arity(args, 2..=2, "apply <versor> <object>")?;
        let v: &Versor = match self.entity(args[0])? {
            Entity::Versor(v) => v,
            e => {
                return Err(self.fail(format!(
                    "`{}` is a {}, expected a versor",
                    args[0],
                    e.kind()
                )))
            }
        };
        let (blade, grade) = self.transformable(args[1])?;
        self.describe(&v.apply(&blade), grade)
    }

    fn bounce(&self, args: &[&str]) -> Answer {
        let usage = "bounce <line> <mirror>... <count>";
        if args.len() < 3 {
            return Err(self.fail(format!("usage: {usage}")));
        }
        let (from, to) = match self.entity(args[0])? {
            Entity::Line { from, to, .. } => (from, to),
            e => {
                return Err(self.fail(format!("`{}` is a {}, expected a line", args[0], e.kind())))
            }
        };
        let count: usize = args[args.len() - 1]
            .parse()
            .map_err(|_| self.fail(format!("usage: {usage}")))?;
        let names = &args[1..args.len() - 1];
        let mirrors = names
            .iter()
            .map(|n| self.blade(n, self.mirror_kinds()).map(|(b, _)| b))
            .collect::<Result<Vec<_>, _>>()?;
        let ray = self.geo(Ray::through(from, to))?;
        let path = self.geo(trace(&ray, &mirrors, count))?;
        let mut lines = Vec::new();
        let mut hits = Vec::new();
        for (i, b) in path.iter().enumerate() {
            lines.push(format!(
                "hit {}: mirror {} at {} direction {}",
                i + 1,
                names[b.mirror],
                tuple(b.hit.coords()),
                tuple(&b.outgoing.direction)
            ));
            hits.push(json!({
                "mirror": names[b.mirror],
                "point": coords_json(b.hit.coords()),
                "direction": coords_json(&b.outgoing.direction),
            }));
        }
        let escaped = path.len() < count;
        if escaped {
            lines.push(format!("escaped after {}", path.len()));
        }
        Ok(Output::new(
            lines.join("\n"),
            json!({"hits": hits, "escaped": escaped}),
        ))
    }
}

fn up(p: &EuclideanPoint) -> Multivector {
    embed(p).into_vector()
}

fn line_output(point: &EuclideanPoint, direction: &[f64]) -> Output {
    Output::new(
        format!(
            "line: point {} direction {}",
            tuple(point.coords()),
            tuple(direction)
        ),
        json!({
            "kind": "line",
            "point": coords_json(point.coords()),
            "direction": coords_json(direction),
        }),
    )
}

fn verdict(name: &str, measure: Option<f64>, eps: f64) -> Output {
    match measure {
        Some(m) => {
            let holds = m < eps;
            let shown = if m == 0.0 { 0.0 } else { m };
            Output::new(
                format!("{holds} ({name} {})", number(shown)),
                json!({"holds": holds, name: shown, "eps": eps}),
            )
        }
        None => Output::new(
            "true (degenerate)".into(),
            json!({"holds": true, name: Value::Null, "eps": eps}),
        ),
    }
}

/// Finite points in descending lexicographic order of their snapped
/// coordinates, infinity last.
fn endpoint_order(a: &Endpoint, b: &Endpoint) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match (a, b) {
        (Endpoint::Infinity, Endpoint::Infinity) => Ordering::Equal,
        (Endpoint::Infinity, _) => Ordering::Greater,
        (_, Endpoint::Infinity) => Ordering::Less,
        (Endpoint::Finite(p), Endpoint::Finite(q)) => {
            let key = |e: &EuclideanPoint| e.coords().iter().map(|c| snap(*c)).collect::<Vec<_>>();
            key(q).partial_cmp(&key(p)).unwrap_or(Ordering::Equal)
        }
    }
}

fn endpoint_text(e: &Endpoint) -> String {
    match e {
        Endpoint::Finite(p) => tuple(p.coords()),
        Endpoint::Infinity => "infinity".into(),
    }
}

fn endpoint_json(e: &Endpoint) -> Value {
    match e {
        Endpoint::Finite(p) => coords_json(p.coords()),
        Endpoint::Infinity => Value::from("infinity"),
    }
}

/// Runs one query against the scene. `eps` is the default tolerance for
/// `collinear` and `coplanar`.
pub fn run_query(scene: &Scene, query: &str, eps: f64) -> Answer {
    let tokens: Vec<&str> = query.split_whitespace().collect();
    let ctx = Ctx { scene, query, eps };
    let Some((verb, args)) = tokens.split_first() else {
        return Err(ctx.fail("empty query"));
    };
    let mut out = match *verb {
        "dist" => ctx.dist(args),
        "circum" => ctx.circum(args),
        "intersect" => ctx.intersect(args),
        "reflect" => ctx.reflect(args),
        "tangent" => ctx.tangent(args),
        "angle" => ctx.angle(args),
        "collinear" => ctx.collinear(args),
        "coplanar" => ctx.coplanar(args),
        "translate" => ctx.translate(args),
        "rotate" => ctx.rotate(args),
        "apply" => ctx.apply(args),
        "bounce" => ctx.bounce(args),
        other => Err(ctx.fail(format!("unknown verb `{other}`"))),
    }?;
    if let Value::Object(map) = &mut out.json {
        map.insert("verb".into(), Value::from(*verb));
        map.insert("query".into(), Value::from(query));
    }
    Ok(out)
}
