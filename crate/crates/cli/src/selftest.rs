//! Built-in acceptance checks behind `lambdakit selftest`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lambdakit::freelie;
use lambdakit::hopf::{self, RestrictedLie, UrPresentation};
use lambdakit::koszul::{self, ExtMethod, Koszul};
use lambdakit::lambda::LambdaAlgebra;
use lambdakit::steenrod::{self, Strategy};
use lambdakit::twisted::{tp_add, tp_divmod, tp_mul, Side};
use lambdakit::{FPModule, Flavor, FrobeniusField, Result, SteenrodAlgebra, TwistedPoly};

pub struct Row {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

pub fn table(rows: &[Row]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!(
            "{:>2}  {:<4}  {:<28} {:>8.2}s  {}\n",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.seconds,
            r.detail
        ));
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    out.push_str(&format!("{passed}/{} passed\n", rows.len()));
    out
}

type Check = fn(bool) -> Result<(bool, String)>;

pub fn run_all(quick: bool) -> Vec<Row> {
    let checks: [(&str, Check); 12] = [
        ("euclidean roundtrip", euclid),
        ("derived completion", completion),
        ("Adem/lambda confluence", confluence),
        ("quadratic duality", duality),
        ("Koszul complexes", complexes),
        ("Ext method agreement", ext_agreement),
        ("PBW", pbw),
        ("abelian homology", abelian),
        ("free Lie oracle", free_lie),
        ("Curtis splitting", curtis),
        ("Hilton-Milnor", hilton_milnor),
        ("determinism", determinism),
    ];
    checks
        .iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let start = Instant::now();
            let (pass, detail) = match check(quick) {
                Ok(r) => r,
                Err(e) => (false, e.to_string()),
            };
            Row { id: i + 1, name, pass, detail, seconds: start.elapsed().as_secs_f64() }
        })
        .collect()
}

fn fields() -> Result<Vec<FrobeniusField>> {
    Ok(vec![
        FrobeniusField::prime(2)?,
        FrobeniusField::new(2, 2, Some(&[1, 1, 1]))?,
        FrobeniusField::new(3, 2, Some(&[1, 0, 1]))?,
    ])
}

fn random_poly(k: &FrobeniusField, rng: &mut ChaCha8Rng, max_deg: usize) -> TwistedPoly {
    let deg = rng.gen_range(0..=max_deg);
    TwistedPoly::new((0..=deg).map(|_| k.element_from_index(rng.gen_range(0..k.order()))).collect())
}

fn euclid(quick: bool) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let per_field = if quick { 100 } else { 334 };
    let mut count = 0;
    for k in fields()? {
        for _ in 0..per_field {
            let f = random_poly(&k, &mut rng, 8);
            let mut g = random_poly(&k, &mut rng, 8);
            if g.is_zero() {
                g = TwistedPoly::constant(k.one());
            }
            for side in [Side::Left, Side::Right] {
                let (q, r) = tp_divmod(&k, &f, &g, side)?;
                let prod = match side {
                    Side::Left => tp_mul(&k, &q, &g),
                    Side::Right => tp_mul(&k, &g, &q),
                };
                if tp_add(&k, &prod, &r) != f || r.degree().is_some_and(|d| Some(d) >= g.degree()) {
                    return Ok((false, format!("{} / {} ({side:?})", f.format(&k), g.format(&k))));
                }
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} pairs, both sides")))
}

pub fn random_module(k: &FrobeniusField, rng: &mut ChaCha8Rng) -> Result<FPModule> {
    let rows = rng.gen_range(0..=3);
    let gens = rng.gen_range(1..=3);
    let relations = (0..rows)
        .map(|_| {
            (0..gens)
                .map(|_| if rng.gen_bool(0.3) { TwistedPoly::zero() } else { random_poly(k, rng, 4) })
                .collect()
        })
        .collect();
    FPModule::new(k.clone(), gens, relations)
}

fn completion(quick: bool) -> Result<(bool, String)> {
    const N: usize = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let total = if quick { 15 } else { 50 };
    let fields = fields()?;
    for i in 0..total {
        let k = &fields[i % fields.len()];
        let m = random_module(k, &mut rng)?;
        let r = m.derived_completion(N)?;
        let raw: Vec<usize> = (1..=N).map(|j| m.quotient_dim_raw(j)).collect();
        if !r.l1_is_zero() || r.l0_tower != raw {
            return Ok((false, format!("module {i}: L1 {:?}, tower {:?} vs {raw:?}", r.l1_tower, r.l0_tower)));
        }
        let again = r.l0_module(k).derived_completion(N)?;
        if !again.l1_is_zero() || again.l0_tower != r.l0_tower {
            return Ok((false, format!("module {i}: completion is not idempotent")));
        }
    }
    Ok((true, format!("{total} modules at N = {N}")))
}

fn confluence(quick: bool) -> Result<(bool, String)> {
    let primes: &[u32] = if quick { &[2, 3] } else { &[2, 3, 5] };
    let mut words = 0;
    for &p in primes {
        let a = SteenrodAlgebra::new(p)?;
        let l = LambdaAlgebra::new(p)?;
        let st: Vec<u32> = steenrod::valid_indices(p, 12).collect();
        let codes: Vec<u32> = (0..=12).filter(|&c| lambdakit::lambda::is_valid_code(p, c)).collect();
        for (gens, is_st) in [(&st, true), (&codes, false)] {
            for &x in gens.iter() {
                for &y in gens.iter() {
                    for &z in gens.iter() {
                        let w = [x, y, z];
                        let (left, right) = if is_st {
                            (a.normalize_fp(&w, Strategy::Leftmost)?, a.normalize_fp(&w, Strategy::Rightmost)?)
                        } else {
                            (l.normalize_fp(&w, Strategy::Leftmost)?, l.normalize_fp(&w, Strategy::Rightmost)?)
                        };
                        if left != right {
                            return Ok((false, format!("p = {p}, word {w:?}")));
                        }
                        words += 1;
                    }
                }
            }
        }
    }
    let sq = SteenrodAlgebra::new(2)?.normalize_fp(&[1, 1], Strategy::Leftmost)?;
    let lam = LambdaAlgebra::new(2)?.normalize_fp(&[0, 1], Strategy::Leftmost)?;
    if !sq.is_empty() || !lam.is_empty() {
        return Ok((false, "Sq1Sq1 or λ0λ1 is nonzero".into()));
    }
    Ok((true, format!("{words} words")))
}

fn duality(_quick: bool) -> Result<(bool, String)> {
    for p in [2, 3] {
        let r = Koszul::new(p)?.quadratic_duality_check(12)?;
        if !r.passes() {
            return Ok((false, format!("p = {p}, degree {:?}", r.first_failure())));
        }
    }
    Ok((true, "p = 2, 3 up to degree 12".into()))
}

fn ranges(quick: bool) -> (Vec<u32>, usize, u32) {
    if quick {
        (vec![1, 2], 3, 10)
    } else {
        (vec![1, 2, 3, 4], 4, 14)
    }
}

fn complexes(quick: bool) -> Result<(bool, String)> {
    let (ls, s_max, t_max) = ranges(quick);
    let mut n = 0;
    for p in [2, 3] {
        let k = Koszul::new(p)?;
        for &l in &ls {
            for flavor in [Flavor::Hat, Flavor::Tilde] {
                let c = koszul::KoszulComplex::build(&k, &koszul::sphere(l), flavor, s_max, t_max)?;
                let r = c.verify();
                if !r.passes() {
                    return Ok((false, format!("p = {p}, l = {l}, {}: {:?}", flavor.name(), r.witnesses[0])));
                }
                n += 1;
            }
        }
    }
    Ok((true, format!("{n} complexes, s <= {s_max}, t <= {t_max}")))
}

fn ext_agreement(quick: bool) -> Result<(bool, String)> {
    let (ls, s_max, t_max) = ranges(quick);
    let mut n = 0;
    for p in [2, 3] {
        let k = Koszul::new(p)?;
        for &l in &ls {
            for flavor in [Flavor::Hat, Flavor::Tilde] {
                // errors out on the first disagreement
                let chart = koszul::ext_chart(&k, &koszul::sphere(l), flavor, s_max, t_max, ExtMethod::Both)?;
                n += chart.entries.len();
            }
        }
    }
    Ok((true, format!("{n} nonzero entries agree")))
}

pub fn pbw_corpus() -> Result<Vec<(String, RestrictedLie)>> {
    let mut out = Vec::new();
    for p in [2, 3] {
        let k = FrobeniusField::prime(p)?;
        let z = k.zero();
        out.push((format!("abelian 1,2 p={p}"), RestrictedLie::abelian(k.clone(), Some(vec![1, 2]), vec![vec![z; 2]; 2])?));
        out.push((format!("trivξ(k{{ξ}}) p={p}"), RestrictedLie::triv_xi(k.clone(), 1, &[], 12)?));
        out.push((format!("trivξ(k{{ξ}}/ξ²) p={p}"), RestrictedLie::triv_xi(k.clone(), 0, &[2], 12)?));
        out.push((format!("Heisenberg p={p}"), RestrictedLie::heisenberg(k)?));
    }
    Ok(out)
}

fn pbw(_quick: bool) -> Result<(bool, String)> {
    let corpus = pbw_corpus()?;
    for (name, lie) in &corpus {
        if !lie.validate(20, 0).passes() {
            return Ok((false, format!("{name} is not a restricted Lie algebra")));
        }
        let r = hopf::pbw_check(lie, 12)?;
        if !r.passes() {
            return Ok((false, format!("{name}: {:?} vs {:?}", r.ur, r.symtr)));
        }
    }
    Ok((true, format!("{} algebras to weight 12", corpus.len())))
}

fn abelian(quick: bool) -> Result<(bool, String)> {
    let bound = if quick { 6 } else { 10 };
    for p in [2, 3] {
        let k = FrobeniusField::prime(p)?;
        let rank1 = hopf::abelian_homology_check(&FPModule::free(k.clone(), 1), 4, bound)?;
        if !rank1.matches_exterior() {
            return Ok((false, format!("rank 1, p = {p}")));
        }
        let predicted = hopf::kunneth(&rank1.tor, &rank1.tor);
        if predicted != hopf::exterior_table(2, 4, bound as usize) {
            return Ok((false, format!("Künneth, p = {p}")));
        }
        let direct = hopf::abelian_homology_check(&FPModule::free(k.clone(), 2), 3, 6)?;
        if !direct.matches_exterior() {
            return Ok((false, format!("direct rank 2, p = {p}")));
        }
        let trunc = UrPresentation::new(RestrictedLie::abelian(k.clone(), Some(vec![1]), vec![vec![k.zero()]])?, bound)?;
        let tor = hopf::bar_tor(&trunc, 4)?;
        if tor == hopf::exterior_table(1, 4, bound as usize) {
            return Ok((false, format!("negative control passed, p = {p}")));
        }
    }
    Ok((true, format!("exterior to degree {bound}; control fails")))
}

fn free_lie(quick: bool) -> Result<(bool, String)> {
    const MAX_STEM: usize = 4;
    let mut cases = 0;
    for (p, l) in [(2u32, 1u32), (2, 2), (3, 1)] {
        let chart = freelie::homotopy_closed_form(p, l, 2, MAX_STEM as u32)?;
        let v = freelie::sphere_model(p, l, MAX_STEM + 1);
        let n_max = if quick { (p * p).min(4) } else { p * p } as usize;
        for n in 1..=n_max {
            let oracle = freelie::homotopy_oracle(&v, n, MAX_STEM)?;
            let closed: Vec<usize> = (0..=MAX_STEM as u32).map(|s| chart.get(s, n as u64)).collect();
            if oracle != closed {
                return Ok((false, format!("p = {p}, l = {l}, n = {n}: {oracle:?} vs {closed:?}")));
            }
            if !freelie::allowed_power(p, l, n as u64) && oracle.iter().any(|&d| d != 0) {
                return Ok((false, format!("p = {p}, l = {l}, n = {n} should vanish")));
            }
            cases += 1;
        }
    }
    Ok((true, format!("{cases} Lie powers, stems <= {MAX_STEM}")))
}

fn curtis(_quick: bool) -> Result<(bool, String)> {
    for p in [2, 3] {
        for l in [1, 2] {
            let v = freelie::sphere_model(p, l, 6);
            let r = freelie::curtis_split_check(&v, 1, 5)?;
            if !r.passes() {
                return Ok((false, format!("p = {p}, l = {l}: split {} conn {}", r.splitting_ok(), r.connectivity_ok())));
            }
        }
    }
    Ok((true, "n = 1, q <= 5".into()))
}

fn hilton_milnor(_quick: bool) -> Result<(bool, String)> {
    let r = freelie::hilton_milnor_dims(2, &koszul::sphere(1), &koszul::sphere(1), 6)?;
    Ok((r.passes(), format!("Hall words per weight {:?}", r.hall_counts)))
}

fn determinism(_quick: bool) -> Result<(bool, String)> {
    use clap::Parser;
    let argv = ["lambdakit", "ext", "chart", "--p", "2", "--l", "1", "--flavor", "hat", "--max-s", "4", "--max-t", "10", "--method", "both"];
    let render = || -> Result<String> {
        let cli = crate::Cli::try_parse_from(argv).map_err(|e| lambdakit::Error::Invalid(e.to_string()))?;
        let cfg = crate::resolve_config(&cli)?;
        Ok(crate::run(&cli, &cfg)?.text)
    };
    let (a, b) = (render()?, render()?);
    Ok((a == b, format!("{} bytes", a.len())))
}
