//! The nine acceptance criteria, each checked exactly and reported on one line.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use wkar_core::addcat::completeness::kar_rank_object;
use wkar_core::addcat::{
    complement_split_mono, is_idempotent_complete, is_weakly_idempotent_complete, kar_functor, standard_inclusion,
    wkar_witness, CategorySpec, KarItem, KarObject, Layer, RingHom, WicCertificate, WicOptions,
};
use wkar_core::complexes::{
    base_change, is_contractible, random_complex, split_contractible, Complex, ComplexShape, SplitOutcome,
};
use wkar_core::exactlin::{snf, Elem, Matrix, Ring};
use wkar_core::k0::{k0_induced_map, k0_presentation, WkarK0Checker};
use wkar_core::weights::{
    heart_roundtrip, is_connective, sample_complexes, sample_retractions, verify_axioms, weight_membership, AxiomOptions,
    AxiomStatus, Side, WeightClassQuery,
};
use wkar_core::{random, Error};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q() -> Ring {
    Ring::Rationals
}

fn f2f3() -> Ring {
    Ring::prime_field_product(vec![2, 3]).unwrap()
}

fn two_three() -> CategorySpec {
    CategorySpec::allowed(q(), vec![2, 3], 12).unwrap()
}

fn shipped_specs() -> Vec<CategorySpec> {
    vec![CategorySpec::full(q()), two_three(), CategorySpec::full(f2f3())]
}

fn err(e: Error) -> String {
    e.to_string()
}

/// `X →i Y →(1 − ip) Y →p X` with `X = k²`, `Y = k³`.
fn proof_complex(spec: &CategorySpec) -> Complex {
    let r = q();
    Complex::new(
        spec.clone(),
        0,
        vec![2, 3, 3, 2].into_iter().map(|n| KarObject::free(&r, n)).collect(),
        vec![
            Matrix::from_i64(&r, 3, 2, &[1, 0, 0, 1, 0, 0]),
            Matrix::from_i64(&r, 3, 3, &[0, 0, 0, 0, 0, 0, 0, 0, 1]),
            Matrix::from_i64(&r, 2, 3, &[1, 0, 0, 0, 1, 0]),
        ],
    )
    .unwrap()
}

/// All `n×n` idempotents over `F_p`, by brute force.
fn idempotents_mod(p: u64, n: usize) -> Vec<Matrix> {
    let ring = Ring::integers_mod(p).unwrap();
    let count = p.pow((n * n) as u32);
    (0..count)
        .filter_map(|code| {
            let mut c = code;
            let entries = (0..n * n)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    Elem::Residue(d)
                })
                .collect();
            let m = Matrix::from_elems(&ring, n, n, entries).unwrap();
            (&m * &m == m).then_some(m)
        })
        .collect()
}

/// Kar objects over F2xF3 of size at most `max`: every idempotent up to size
/// `exhaustive` (pairs of idempotents over F2 and F3), then a diagonal and
/// three random conjugates per multirank.
fn kar_objects(max: usize, exhaustive: usize, seed: u64) -> Vec<KarObject> {
    let ring = f2f3();
    let mut out = Vec::new();
    for n in 0..=exhaustive.min(max) {
        let (e2, e3) = (idempotents_mod(2, n), idempotents_mod(3, n));
        for a in &e2 {
            for b in &e3 {
                out.push(KarObject::new(Matrix::from_factors(&ring, &[a.clone(), b.clone()])).unwrap());
            }
        }
    }
    let mut rng = random::seeded(seed);
    for n in exhaustive + 1..=max {
        for a in 0..=n {
            for b in 0..=n {
                out.push(KarObject::diagonal(&ring, n, &[a, b]));
                for _ in 0..3 {
                    out.push(KarObject::new(random::idempotent(&ring, n, &[a, b], &mut rng)).unwrap());
                }
            }
        }
    }
    out
}

fn splitting_algorithm() -> Outcome {
    let spec = CategorySpec::full(q());
    let shape = ComplexShape { max_length: 6, max_rank: 5, min_degree: (-3, 3), contractible: true };
    let mut rng = random::seeded(2024);
    for k in 0..200 {
        let m = random_complex(&spec, &shape, &mut rng).trimmed();
        ensure!(m.essential_length() <= 6 && m.terms().iter().all(|t| t.size() <= 5), "sample {k} exceeds the shape");
        ensure!(common::is_acyclic_q(&m), "sample {k} has homology");
        let h = is_contractible(&m).map_err(err)?.ok_or(format!("sample {k}: no contraction"))?;
        let SplitOutcome::Split(s) = split_contractible(&m, &h, &spec).map_err(err)? else {
            return Err(format!("sample {k} did not split"));
        };
        ensure!(s.verify(), "sample {k}: splitting does not verify");
        ensure!(s.backward.after(&s.forward) == m.identity(), "sample {k}: backward∘forward ≠ id");
        ensure!(s.forward.after(&s.backward) == s.target.identity(), "sample {k}: forward∘backward ≠ id");
    }
    Ok(())
}

fn counterexample_fidelity() -> Outcome {
    let (i, p) = standard_inclusion(&q(), 2, 3);
    match complement_split_mono(&i, &p, &two_three()) {
        Err(Error::SplitMonoNoComplement { ambient, .. }) => {
            ensure!(ambient.multirank().map_err(err)? == vec![1], "complement is not k¹")
        }
        other => return Err(format!("expected no complement, got {other:?}")),
    }
    let full = CategorySpec::full(q());
    let s = complement_split_mono(&i, &p, &full).map_err(err)?;
    ensure!(s.verify() && s.complement.size() == 1, "full spec splitting is wrong");

    let m = proof_complex(&two_three());
    let h = is_contractible(&m).map_err(err)?.ok_or("proof complex is not contractible")?;
    match split_contractible(&m, &h, &two_three()).map_err(err)? {
        SplitOutcome::Failed(f) => {
            ensure!(f.degree == 0, "failure at degree {}", f.degree);
            ensure!(f.complement.multirank().map_err(err)? == vec![1], "failure complement is not k¹");
        }
        SplitOutcome::Split(_) => return Err("proof complex split over the restricted spec".into()),
    }
    let m = proof_complex(&full);
    let h = is_contractible(&m).map_err(err)?.ok_or("proof complex is not contractible")?;
    match split_contractible(&m, &h, &full).map_err(err)? {
        SplitOutcome::Split(s) => ensure!(s.verify(), "full spec splitting does not verify"),
        SplitOutcome::Failed(f) => return Err(format!("full spec failed: {}", f.reason)),
    }
    Ok(())
}

fn completeness_triad() -> Outcome {
    let opts = WicOptions::default();
    let prod = CategorySpec::full(f2f3());
    ensure!(is_weakly_idempotent_complete(&prod, &opts).map_err(err)?.complete, "F2xF3 not wic");
    let ic = is_idempotent_complete(&prod, None).map_err(err)?;
    ensure!(!ic.complete, "F2xF3 reported idempotent complete");
    let e = ic.witness.ok_or("no idempotent witness")?;
    let want = Matrix::from_elems(&f2f3(), 1, 1, vec![Elem::Tuple(vec![1, 0])]).unwrap();
    ensure!(e.matrix == want, "witness is {:?}, not (1,0)", e.matrix);

    let r = is_weakly_idempotent_complete(&two_three(), &opts).map_err(err)?;
    let c = r.counterexample.ok_or("no counterexample for {2,3}")?;
    ensure!(!r.complete && (c.a, c.b) == (2, 3), "{{2,3}} counterexample is ({}, {})", c.a, c.b);

    ensure!(is_weakly_idempotent_complete(&CategorySpec::full(q()), &opts).map_err(err)?.complete, "Q not wic");
    for spec in shipped_specs() {
        let wk = spec.with_layer(Layer::Wkar);
        let r = is_weakly_idempotent_complete(&wk, &WicOptions { samples: 50, seed: 11, ..opts.clone() }).map_err(err)?;
        let Some(WicCertificate::CombinedWitnesses { samples }) = r.certificate else {
            return Err(format!("wKar({spec}) has no combined-witness certificate"));
        };
        ensure!(r.complete && samples.len() == 50, "wKar({spec}): {} combined witnesses", samples.len());
        ensure!(samples.iter().all(|w| w.verify(&spec)), "wKar({spec}): a combined witness fails");
    }
    Ok(())
}

fn heart_equivalence() -> Outcome {
    let spec = two_three();
    let kar = spec.with_layer(Layer::Kar);
    for r in 0..=5 {
        let z = kar_rank_object(&kar, r, 12).map_err(err)?;
        let rt = heart_roundtrip(&z, &spec, None).map_err(err)?;
        ensure!(rt.heart.witness.verify(&spec), "rank {r}: witness fails");
        ensure!(rt.heart.to_object.verify(), "rank {r}: equivalence to Z fails");
        ensure!(rt.heart.membership.verify(), "rank {r}: w=0 membership fails");
        ensure!(rt.recovered.witness.verify(&spec), "rank {r}: recovered witness fails");
        ensure!(rt.iso.verify() && rt.iso.forward.source == z, "rank {r}: Z ≇ Z'");
        ensure!(rt.recovered.z.multirank().map_err(err)? == vec![r], "rank {r}: wrong recovered rank");
        if r == 1 {
            let c = rt.heart.complex.trimmed();
            let nonzero = c.terms().iter().filter(|t| t.size() > 0).count();
            ensure!(nonzero == 2 && c.terms().iter().all(|t| t.is_free()), "k¹ is not a 2-term complex of free terms");
        }
    }
    Ok(())
}

fn weight_axioms() -> Outcome {
    for spec in [CategorySpec::full(q()), two_three()] {
        let sample = sample_complexes(&spec, 100, 7);
        let retractions = sample_retractions(&sample).map_err(err)?;
        let options = AxiomOptions { triangles: 50, hom_pairs: 200, seed: 7 };
        let report = verify_axioms(&spec, &sample, &retractions, &options).map_err(err)?;
        for e in &report.entries {
            ensure!(e.status == AxiomStatus::Pass, "{spec}: axiom {} fails: {:?}", e.axiom, e.counterexample.as_ref().map(|c| &c.reason));
        }
        let ext = report.entry("extension").ok_or("no extension entry")?;
        ensure!(ext.checks >= 50, "{spec}: only {} extension checks", ext.checks);
        // every (w<=0 member, w>=0 member) pair gets the exact disjoint-support check
        let count = |side| -> Result<usize, String> {
            let mut n = 0;
            for m in &sample {
                n += weight_membership(&WeightClassQuery { side, level: 0, complex: m.clone() }).map_err(err)?.is_some() as usize;
            }
            Ok(n)
        };
        let pairs = count(Side::Le)? * count(Side::Ge)?;
        let orth = report.entry("iii").ok_or("no orthogonality entry")?;
        ensure!(pairs > 0 && orth.checks >= pairs, "{spec}: orthogonality checked {} of {pairs} pairs", orth.checks);
    }
    Ok(())
}

fn connectivity() -> Outcome {
    for spec in [CategorySpec::full(q()), two_three()] {
        let v = is_connective(&spec, 3, 5).map_err(err)?;
        ensure!(v.connective && v.fully_faithful, "{spec}: not connective");
    }
    Ok(())
}

fn k0_suite() -> Outcome {
    for spec in [CategorySpec::full(q()), two_three()] {
        let p = k0_presentation(&spec, 12).map_err(err)?;
        ensure!(p.stable, "{spec}: unstable at 13");
        ensure!(p.invariants.free_rank == 1 && p.invariants.torsion.is_empty(), "{spec}: K0 is not ℤ");
        ensure!(p.relations_vanish(), "{spec}: relations do not vanish");
    }
    let kar = CategorySpec::full(f2f3()).with_layer(Layer::Kar);
    let p = k0_presentation(&kar, 4).map_err(err)?;
    ensure!(p.stable && p.invariants.free_rank == 2 && p.invariants.torsion.is_empty(), "Kar(F2xF3): K0 is not ℤ²");

    let m = k0_induced_map(&two_three(), &CategorySpec::full(q()), 12).map_err(err)?;
    ensure!(m.bijective, "{{2,3}} ⊂ Q does not induce a bijection");

    let base = CategorySpec::full(f2f3());
    let checker = WkarK0Checker::new(&base, 4).map_err(err)?;
    let objects = kar_objects(4, 2, 12);
    for z in &objects {
        let ranks = z.multirank().map_err(err)?;
        let v = checker.check(z).map_err(err)?;
        ensure!(v.in_image == (ranks[0] == ranks[1]), "multirank {ranks:?} misclassified");
    }
    ensure!(objects.len() > 100, "only {} objects checked", objects.len());
    Ok(())
}

fn functor_extension() -> Outcome {
    let f = RingHom::projection(f2f3(), 0).map_err(err)?;
    let ring = f2f3();
    let mut rng = random::seeded(8);
    for k in 0..50 {
        let objs: Vec<KarObject> = (0..3).map(|_| random::kar_object(&ring, rng.gen_range(0..=3), &mut rng)).collect();
        let g1 = random::kar_morphism(&objs[0], &objs[1], &mut rng);
        let g2 = random::kar_morphism(&objs[1], &objs[2], &mut rng);
        let comp = g2.after(&g1).map_err(err)?;
        let lhs = f.map_morphism(&comp).map_err(err)?;
        let rhs = f.map_morphism(&g2).map_err(err)?.after(&f.map_morphism(&g1).map_err(err)?).map_err(err)?;
        ensure!(lhs == rhs, "pair {k}: F(g∘f) ≠ F(g)∘F(f)");
        let id = f.map_morphism(&objs[0].identity()).map_err(err)?;
        ensure!(id.is_identity(), "pair {k}: F(id) ≠ id");
        let KarItem::Morphism(via) = kar_functor(&f, &KarItem::Morphism(comp)).map_err(err)? else {
            return Err("functor changed the kind of item".into());
        };
        ensure!(via == lhs, "pair {k}: kar_functor disagrees with map_morphism");
    }
    let base = CategorySpec::full(ring.clone());
    let target = f.map_spec(&base).map_err(err)?;
    for z in kar_objects(3, 3, 13) {
        if let Some(w) = wkar_witness(&z, &base, None).map_err(err)?.witness {
            let mapped = f.map_witness(&w, &target).map_err(err)?;
            ensure!(mapped.verify(&target), "witness for {z} is not preserved");
        }
    }
    Ok(())
}

fn integer_honesty() -> Outcome {
    let z = Ring::Integers;
    let spec = CategorySpec::full(z.clone());
    let m = Complex::new(spec, 0, vec![KarObject::free(&z, 1), KarObject::free(&z, 1)], vec![Matrix::from_i64(&z, 1, 1, &[2])])
        .map_err(err)?;
    ensure!(is_contractible(&m).map_err(err)?.is_none(), "[ℤ →2 ℤ] reported contractible");
    ensure!(common::rank_mod(&common::rows_z(&m.diff(0)), 2) == 0, "oracle: 2 is a unit mod 2");
    let mq = base_change(&m, &q()).map_err(err)?;
    let h = is_contractible(&mq).map_err(err)?.ok_or("ℚ base change is not contractible")?;
    ensure!(h.is_contraction(), "ℚ contraction does not verify");

    let mut rng = random::seeded(9);
    for k in 0..500 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let a = Matrix::from_fn(&z, r, c, |_, _| Elem::Integer(BigInt::from(rng.gen_range(-9..=9))));
        let s = snf(&a).map_err(err)?;
        ensure!(&(&s.u * &a) * &s.v == s.s, "matrix {k}: u·a·v ≠ s");
        ensure!(common::is_unimodular(&common::rows_z(&s.u)), "matrix {k}: u is not unimodular");
        ensure!(common::is_unimodular(&common::rows_z(&s.v)), "matrix {k}: v is not unimodular");
        let sz = common::rows_z(&s.s);
        for i in 0..r {
            for j in 0..c {
                ensure!(i == j || sz[i][j].is_zero(), "matrix {k}: s is not diagonal");
            }
        }
        let d: Vec<BigInt> = (0..r.min(c)).map(|i| sz[i][i].clone()).collect();
        ensure!(d.iter().all(|x| !x.is_negative()), "matrix {k}: negative invariant factor");
        for w in d.windows(2) {
            ensure!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero(), "matrix {k}: divisibility fails");
        }
        let rank = d.iter().filter(|x| !x.is_zero()).count();
        ensure!(rank == common::rank_q(common::rows_q(&a)), "matrix {k}: rank disagrees with the oracle");
        if r == c {
            let det: BigInt = d.iter().product();
            ensure!(det == common::det_bareiss(&common::rows_z(&a)).abs(), "matrix {k}: |det| ≠ ∏ d_i");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 splitting algorithm on 200 contractible complexes", splitting_algorithm),
        ("2 counterexample fidelity over {0,2,3,...}", counterexample_fidelity),
        ("3 completeness triad", completeness_triad),
        ("4 heart equivalence for ranks 0..5", heart_equivalence),
        ("5 weight axioms on 100 complexes per spec", weight_axioms),
        ("6 connectivity with degree bound 3", connectivity),
        ("7 K0 suite", k0_suite),
        ("8 functor extension along F2xF3 -> F2", functor_extension),
        ("9 integer-coefficient honesty and SNF", integer_honesty),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match result {
            Ok(()) => println!("PASS criterion {name} ({:.1}s)", start.elapsed().as_secs_f64()),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {name}: {reason}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
