//! Seeded generator of small well-formed class tables.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Class {
    name: String,
    arity: usize,
}

/// Source text of a random table with at most `max_classes` classes,
/// including the root `Object`. With `f_bounds` false no parameter bound
/// mentions a parameter.
pub fn random_table_source(seed: u64, max_classes: usize, f_bounds: bool) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(2..=max_classes.max(2));
    let mut classes = vec![Class {
        name: "Object".into(),
        arity: 0,
    }];
    let mut lines = vec!["class Object".to_string()];

    for k in 1..count {
        let name = format!("C{k}");
        let arity = *[0usize, 0, 1, 1, 1, 2].choose(&mut rng).unwrap();
        let params: Vec<String> = (0..arity).map(|i| format!("T{i}")).collect();
        classes.push(Class {
            name: name.clone(),
            arity,
        });

        let mut header = format!("class {name}");
        if arity > 0 {
            let mut ps = Vec::new();
            for p in &params {
                let mut decl = p.clone();
                match rng.gen_range(0..6) {
                    0 | 1 => {}
                    2 => decl += &format!(" extends {}", closed_use(&mut rng, &classes, 0)),
                    3 if f_bounds => {
                        decl += &format!(" extends {}", open_use(&mut rng, &classes, &params))
                    }
                    4 if f_bounds => decl += &format!(" super {}", open_use(&mut rng, &classes, &params)),
                    _ => decl += &format!(" super {}", closed_use(&mut rng, &classes, 0)),
                }
                ps.push(decl);
            }
            header += &format!("<{}>", ps.join(", "));
        }

        let sup = rng.gen_range(0..k);
        let sup_class = &classes[sup];
        let sup_args: Vec<String> = (0..sup_class.arity)
            .map(|_| match rng.gen_range(0..4) {
                0 | 1 if !params.is_empty() => params.choose(&mut rng).unwrap().clone(),
                2 => open_use(&mut rng, &classes, &params),
                _ => closed_use(&mut rng, &classes, 0),
            })
            .collect();
        header += &format!(" extends {}", sup_class.name);
        if !sup_args.is_empty() {
            header += &format!("<{}>", sup_args.join(", "));
        }
        lines.push(header);
    }
    lines.join("\n")
}

fn closed_use(rng: &mut ChaCha8Rng, classes: &[Class], depth: usize) -> String {
    let c = classes.choose(rng).unwrap();
    if c.arity == 0 || depth > 0 {
        let plain: Vec<&Class> = classes.iter().filter(|c| c.arity == 0).collect();
        return plain.choose(rng).unwrap().name.clone();
    }
    let args: Vec<String> = (0..c.arity).map(|_| closed_use(rng, classes, depth + 1)).collect();
    format!("{}<{}>", c.name, args.join(", "))
}

/// A use of a generic class applied to parameters (or a bare parameter).
fn open_use(rng: &mut ChaCha8Rng, classes: &[Class], params: &[String]) -> String {
    let generic: Vec<&Class> = classes.iter().filter(|c| c.arity > 0).collect();
    if params.is_empty() {
        return closed_use(rng, classes, 0);
    }
    match generic.choose(rng) {
        Some(c) => {
            let args: Vec<String> = (0..c.arity)
                .map(|_| params.choose(rng).unwrap().clone())
                .collect();
            format!("{}<{}>", c.name, args.join(", "))
        }
        None => params.choose(rng).unwrap().clone(),
    }
}
