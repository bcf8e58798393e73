//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Set `ISOFORM_BLESS=1` to rewrite the CLI golden files instead of
//! comparing against them.

mod oracle;

use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use isoform::isotropy::{
    cw_solve, isotropic_symmetric, isotropic_via_norm, norm_solve, HomogeneousPoly, IsotropyError,
    DEFAULT_CW_BOUND, DEFAULT_SEARCH_BOUND,
};
use isoform::maschke::{
    close_group, counterexample_report, cyclic_regular, decompose, equivariant_projector,
    is_invariant_subspace, MaschkeError, Representation, DEFAULT_GROUP_CAP, DEFAULT_PROBES,
};
use isoform::{FieldElement, FieldSpec, HermitianForm, Matrix};
use num_rational::BigRational;
use oracle::{Arith, Elt, SmallExt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "diagonalization",
            limit: Duration::from_secs(10),
            run: diagonalization,
        },
        Criterion {
            id: 2,
            name: "non-isotropic vector over F_9",
            limit: Duration::from_secs(1),
            run: non_isotropic_f9,
        },
        Criterion {
            id: 3,
            name: "isotropy via norms",
            limit: Duration::from_secs(30),
            run: isotropy_via_norms,
        },
        Criterion {
            id: 4,
            name: "norm surjectivity",
            limit: Duration::from_secs(5),
            run: norm_surjectivity,
        },
        Criterion {
            id: 5,
            name: "diagonal ternary quadrics",
            limit: Duration::from_secs(60),
            run: ternary_quadrics,
        },
        Criterion {
            id: 6,
            name: "Chevalley consistency",
            limit: Duration::from_secs(60),
            run: chevalley,
        },
        Criterion {
            id: 7,
            name: "Maschke decomposition",
            limit: Duration::from_secs(5),
            run: maschke_positive,
        },
        Criterion {
            id: 8,
            name: "orthogonal complement counterexample",
            limit: Duration::from_secs(5),
            run: counterexample,
        },
        Criterion {
            id: 9,
            name: "CLI goldens and exit codes",
            limit: Duration::from_secs(5),
            run: cli_goldens,
        },
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.contains(&c.id) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; exceeded {:?}", c.limit)),
            other => other,
        };
        let timing = format!(
            "{:.2}s, limit {}s",
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        match outcome {
            Ok(detail) => println!("criterion {} ({}): PASS [{timing}] {detail}", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({}): FAIL [{timing}] {detail}", c.id, c.name);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn f(spec: &str) -> FieldSpec {
    spec.parse().unwrap()
}

fn random_form(k: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> HermitianForm {
    let mut h = Matrix::zeros(k, n, n);
    for i in 0..n {
        h[(i, i)] = k.sample_fixed(rng, 4);
        for j in i + 1..n {
            let x = k.sample(rng, 4);
            h[(j, i)] = x.conj();
            h[(i, j)] = x;
        }
    }
    // make a quarter of the forms degenerate
    if n > 1 && rng.gen_ratio(1, 4) {
        let z = rng.gen_range(0..n);
        for j in 0..n {
            h[(z, j)] = k.zero();
            h[(j, z)] = k.zero();
        }
    }
    HermitianForm::new(h).unwrap()
}

fn diagonalization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let fields = ["Fp:7", "Fp2:3", "Fp2:5", "Q", "Qsqrt:-1", "Qsqrt:5"];
    let mut count = 0;
    for spec in fields {
        let k = f(spec);
        let o = Arith::of(k);
        for t in 0..200 {
            let n = 1 + t % 6;
            let form = random_form(k, n, &mut rng);
            let d = form.diagonalize();
            let h = o.matrix(form.gram());
            let b = o.matrix(&d.basis_change);
            let c = o.mat_mul(&o.mat_mul(&o.transpose(&b), &h), &o.mat_conj(&b));
            ensure!(
                o.is_diagonal(&c),
                "{spec} n={n}: B^T H conj(B) not diagonal for {:?}",
                form.gram()
            );
            for (i, (row, reported)) in c.iter().zip(&d.diagonal).enumerate() {
                ensure!(
                    row[i] == o.lift(reported),
                    "{spec}: reported diagonal entry {i} is wrong"
                );
                ensure!(o.is_fixed(&row[i]), "{spec}: diagonal entry {i} not fixed");
            }
            ensure!(o.rank(&b) == n, "{spec} n={n}: B is singular");
            count += 1;
        }
    }
    Ok(format!("{count} forms, exact"))
}

fn non_isotropic_f9() -> Check {
    let k = f("Fp2:3");
    let o = Arith::of(k);
    let mut count = 0;
    for a in 0..3 {
        for d in 0..3 {
            for idx in 0..9 {
                let b = k.element_at(idx);
                let gram = Matrix::from_rows(
                    k,
                    vec![
                        vec![k.from_i64(a), b.clone()],
                        vec![b.conj(), k.from_i64(d)],
                    ],
                )
                .unwrap();
                let form = HermitianForm::new(gram).unwrap();
                let zero = a == 0 && d == 0 && idx == 0;
                match form.non_isotropic_vector() {
                    None => ensure!(
                        zero,
                        "no vector returned for nonzero form {:?}",
                        form.gram()
                    ),
                    Some(v) => {
                        ensure!(!zero, "vector returned for the zero form");
                        let h = o.matrix(form.gram());
                        let v = o.vector(&v);
                        ensure!(
                            !o.is_zero(&o.pair(&h, &v, &v)),
                            "returned vector is isotropic"
                        );
                    }
                }
                count += 1;
            }
        }
    }
    ensure!(count == 81, "enumerated {count} matrices");
    Ok("81 Gram matrices".into())
}

/// All vectors of `F_{p^2}^n` as residue pairs, via their norms: whether
/// `sum lambda_i N(x_i) = 0` has a nonzero solution.
fn oracle_has_isotropic(ext: SmallExt, lambdas: &[u64]) -> bool {
    let p = ext.p;
    let q = p * p;
    let norms: Vec<u64> = (0..q).map(|i| ext.norm(i % p, i / p)).collect();
    let n = lambdas.len();
    let total = q.pow(n as u32);
    (1..total).any(|mut idx| {
        let mut acc = 0;
        for l in lambdas {
            acc = (acc + l * norms[(idx % q) as usize]) % p;
            idx /= q;
        }
        acc == 0
    })
}

fn isotropy_via_norms() -> Check {
    let mut count = 0;
    for p in [3u64, 5] {
        let k = f(&format!("Fp2:{p}"));
        let o = Arith::of(k);
        let ext = SmallExt::new(p);
        for n in [2usize, 3] {
            let total = (p - 1).pow(n as u32);
            for idx in 0..total {
                let lambdas: Vec<u64> = (0..n)
                    .map(|i| 1 + idx / (p - 1).pow(i as u32) % (p - 1))
                    .collect();
                let entries: Vec<FieldElement> =
                    lambdas.iter().map(|&l| k.from_i64(l as i64)).collect();
                let form = HermitianForm::diagonal(k, &entries).unwrap();
                ensure!(
                    oracle_has_isotropic(ext, &lambdas),
                    "oracle finds no isotropic vector for {lambdas:?}"
                );
                let w = isotropic_via_norm(&form, DEFAULT_SEARCH_BOUND)
                    .map_err(|e| format!("F_{}: {lambdas:?}: {e}", p * p))?;
                let h = o.matrix(form.gram());
                let v = o.vector(w.vector());
                ensure!(
                    v.iter().any(|x| !o.is_zero(x)),
                    "zero witness for {lambdas:?}"
                );
                ensure!(
                    o.is_zero(&o.pair(&h, &v, &v)),
                    "witness not isotropic for {lambdas:?}"
                );
                count += 1;
            }
        }
    }
    Ok(format!("{count} diagonal forms over F_9 and F_25"))
}

fn norm_surjectivity() -> Check {
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    let mut count = 0;
    for p in primes {
        let k = f(&format!("Fp2:{p}"));
        let ext = SmallExt::new(p);
        let mut image = vec![false; p as usize];
        for a in 0..p {
            for b in 0..p {
                image[ext.norm(a, b) as usize] = true;
            }
        }
        ensure!(
            image.iter().all(|&x| x),
            "oracle: norm of F_{} misses a value",
            p * p
        );
        for c in 1..p {
            let target = k.from_i64(c as i64);
            let x = norm_solve(k, &target, DEFAULT_SEARCH_BOUND)
                .map_err(|e| format!("p={p} c={c}: {e}"))?;
            let (a, b) = x.residues().unwrap();
            ensure!(ext.norm(a, b) == c, "p={p} c={c}: x={x} has the wrong norm");
            count += 1;
        }
    }
    Ok(format!("{count} targets over 10 primes"))
}

fn ternary_quadrics() -> Check {
    let mut count = 0;
    for p in [3u64, 5, 7, 11, 13] {
        let k = f(&format!("Fp:{p}"));
        let value = |l: &[u64; 3], v: &[FieldElement]| -> u64 {
            let xs: Vec<u64> = v.iter().map(|e| e.residues().unwrap().0).collect();
            (0..3).map(|i| l[i] * (xs[i] * xs[i] % p) % p).sum::<u64>() % p
        };
        for a in 1..p {
            for b in 1..p {
                for c in 1..p {
                    let l = [a, b, c];
                    let coeffs: Vec<FieldElement> =
                        l.iter().map(|&x| k.from_i64(x as i64)).collect();
                    let form = HermitianForm::diagonal(k, &coeffs).unwrap();
                    let w = isotropic_symmetric(&form).map_err(|e| format!("p={p} {l:?}: {e}"))?;
                    ensure!(
                        w.vector().iter().any(|x| !x.is_zero()),
                        "p={p} {l:?}: zero witness"
                    );
                    ensure!(
                        value(&l, w.vector()) == 0,
                        "p={p} {l:?}: witness not isotropic"
                    );
                    let quadric = HomogeneousPoly::diagonal_quadric(k, &coeffs).unwrap();
                    let v = cw_solve(&quadric, DEFAULT_CW_BOUND)
                        .map_err(|e| format!("p={p} {l:?}: cw_solve: {e}"))?;
                    ensure!(
                        v.iter().any(|x| !x.is_zero()),
                        "p={p} {l:?}: cw_solve zero vector"
                    );
                    ensure!(
                        value(&l, &v) == 0,
                        "p={p} {l:?}: cw_solve vector not a zero"
                    );
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} triples"))
}

fn chevalley() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101, 311];
    let mut count = 0;
    let mut counted = 0;
    while count < 500 {
        let p = primes[rng.gen_range(0..primes.len())];
        let max_n = (2..=16u32).take_while(|&n| p.pow(n) <= 100_000).last();
        let Some(max_n) = max_n else { continue };
        let n = rng.gen_range(2..=max_n) as usize;
        let d = rng.gen_range(1..n) as u32;
        let k = f(&format!("Fp:{p}"));
        let terms: Vec<(FieldElement, Vec<u32>)> = (0..rng.gen_range(1..=5))
            .map(|_| {
                let mut e = vec![0u32; n];
                for _ in 0..d {
                    e[rng.gen_range(0..n)] += 1;
                }
                (k.from_i64(rng.gen_range(1..p) as i64), e)
            })
            .collect();
        let eval = |x: &[u64]| -> u64 {
            terms.iter().fold(0, |acc, (c, e)| {
                let m = e
                    .iter()
                    .zip(x)
                    .fold(c.residues().unwrap().0, |m, (&ei, &xi)| {
                        m * oracle::pow_mod(xi, ei as u64, p) % p
                    });
                (acc + m) % p
            })
        };
        let poly = HomogeneousPoly::new(k, n, d, terms.clone()).map_err(|e| e.to_string())?;
        match cw_solve(&poly, DEFAULT_CW_BOUND) {
            Ok(v) => {
                let xs: Vec<u64> = v.iter().map(|e| e.residues().unwrap().0).collect();
                ensure!(xs.iter().any(|&x| x != 0), "zero vector for {poly}");
                ensure!(eval(&xs) == 0, "{xs:?} is not a zero of {poly}");
            }
            Err(IsotropyError::NoSolutionFound) => {
                return Err(format!("NoSolutionFound for {poly} over F_{p}"))
            }
            Err(e) => return Err(format!("{poly}: {e}")),
        }
        // Warning's theorem: the number of zeros is divisible by p
        if p.pow(n as u32) <= 20_000 {
            let total = p.pow(n as u32);
            let zeros = (0..total)
                .filter(|&idx| {
                    let xs: Vec<u64> = (0..n).map(|i| idx / p.pow(i as u32) % p).collect();
                    eval(&xs) == 0
                })
                .count() as u64;
            ensure!(
                zeros.is_multiple_of(p),
                "oracle: {zeros} zeros of {poly} over F_{p}"
            );
            counted += 1;
        }
        count += 1;
    }
    Ok(format!(
        "{count} polynomials, {counted} zero counts checked"
    ))
}

fn check_projector(o: &Arith, rep: &Representation, w: &isoform::Subspace) -> Result<(), String> {
    let split = equivariant_projector(rep, w).map_err(|e| e.to_string())?;
    let pi = o.matrix(&split.projector);
    ensure!(o.mat_mul(&pi, &pi) == pi, "projector is not idempotent");
    for g in rep.elements() {
        let g = o.matrix(g);
        ensure!(
            o.mat_mul(&g, &pi) == o.mat_mul(&pi, &g),
            "projector does not commute with the group"
        );
    }
    let basis = o.matrix(w.basis());
    ensure!(o.mat_mul(&pi, &basis) == basis, "projector does not fix W");
    ensure!(o.rank(&pi) == w.dim(), "projector image is larger than W");
    Ok(())
}

fn maschke_positive() -> Check {
    let k = f("Fp:7");
    let o = Arith::of(k);
    let swap =
        Matrix::from_rows(k, vec![vec![k.zero(), k.one()], vec![k.one(), k.zero()]]).unwrap();
    let reps = [
        (
            "C2 swap",
            close_group(k, 2, vec![swap], DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?,
            2,
        ),
        (
            "C3 regular",
            cyclic_regular(k, 3, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?,
            3,
        ),
    ];
    let mut summary = Vec::new();
    for (name, rep, order) in reps {
        ensure!(rep.order() == order, "{name}: order {}", rep.order());
        let parts = decompose(&rep, DEFAULT_PROBES, 0).map_err(|e| format!("{name}: {e}"))?;
        let dims: Vec<usize> = parts.iter().map(|s| s.dim()).collect();
        ensure!(
            dims.iter().sum::<usize>() == rep.dim(),
            "{name}: dims {dims:?}"
        );
        let mut all: Vec<Vec<Elt>> = Vec::new();
        for s in &parts {
            ensure!(
                is_invariant_subspace(&rep, s).map_err(|e| e.to_string())?,
                "{name}: summand not invariant"
            );
            let basis = o.matrix(s.basis());
            for g in rep.elements() {
                let image = o.mat_mul(&o.matrix(g), &basis);
                let joined: Vec<Vec<Elt>> = basis
                    .iter()
                    .zip(&image)
                    .map(|(a, b)| [a.clone(), b.clone()].concat())
                    .collect();
                ensure!(
                    o.rank(&joined) == s.dim(),
                    "{name}: oracle finds summand not invariant"
                );
            }
            check_projector(&o, &rep, s).map_err(|e| format!("{name}: {e}"))?;
            if all.is_empty() {
                all = basis;
            } else {
                all = all
                    .iter()
                    .zip(&basis)
                    .map(|(a, b)| [a.clone(), b.clone()].concat())
                    .collect();
            }
        }
        ensure!(
            o.rank(&all) == rep.dim(),
            "{name}: summands are not a direct sum"
        );
        summary.push(format!("{name} -> {dims:?}"));
    }
    Ok(summary.join(", "))
}

fn counterexample() -> Check {
    let mut summary = Vec::new();
    for (spec, n) in [("Fp2:3", 2usize), ("Fp:7", 3)] {
        let k = f(spec);
        let o = Arith::of(k);
        let rep = close_group(k, n, vec![], DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
        let seed = HermitianForm::diagonal(k, &vec![k.one(); n]).unwrap();
        let r = counterexample_report(&rep, &seed, DEFAULT_SEARCH_BOUND)
            .map_err(|e| format!("{spec}: {e}"))?;
        let h = o.matrix(r.form.gram());
        let w = o.vector(r.witness.vector());
        ensure!(w.iter().any(|x| !o.is_zero(x)), "{spec}: zero witness");
        ensure!(
            o.is_zero(&o.pair(&h, &w, &w)),
            "{spec}: witness not isotropic"
        );
        ensure!(r.contains, "{spec}: report does not claim W in W-perp");
        ensure!(
            r.restriction_rank == 0,
            "{spec}: restriction rank {}",
            r.restriction_rank
        );
        ensure!(
            r.w_perp.dim() == n - 1,
            "{spec}: W-perp has dim {}",
            r.w_perp.dim()
        );
        for u in r.w_perp.basis_vectors() {
            ensure!(
                o.is_zero(&o.pair(&h, &o.vector(&u), &w)),
                "{spec}: W-perp vector not orthogonal to W"
            );
        }
        ensure!(
            r.w_perp.contains(r.witness.vector()).unwrap(),
            "{spec}: W not inside W-perp"
        );
        let c = o.matrix(r.maschke_complement.basis());
        ensure!(
            c.first().map_or(0, |row| row.len()) == n - 1,
            "{spec}: complement has the wrong dimension"
        );
        let joined: Vec<Vec<Elt>> = w
            .iter()
            .zip(&c)
            .map(|(x, row)| [vec![x.clone()], row.clone()].concat())
            .collect();
        ensure!(
            o.rank(&joined) == n,
            "{spec}: W + complement is not the whole space"
        );
        ensure!(r.direct_sum, "{spec}: report does not claim a direct sum");
        check_projector(&o, &rep, &r.w_subspace).map_err(|e| format!("{spec}: {e}"))?;
        summary.push(format!(
            "{spec}^{n}: witness {}",
            isoform::linalg::format_vector(r.witness.vector())
        ));
    }
    let q = FieldSpec::rationals();
    let rep = close_group(q, 2, vec![], DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
    let seed = HermitianForm::diagonal(q, &[q.one(), q.one()]).unwrap();
    ensure!(
        !oracle::is_square_rational(&-BigRational::from_integer(1.into())),
        "oracle: -1 is a square in Q"
    );
    match counterexample_report(&rep, &seed, DEFAULT_SEARCH_BOUND) {
        Err(MaschkeError::NoIsotropicVector(_)) => summary.push("Q^2: NoIsotropicVector".into()),
        Err(e) => return Err(format!("Q^2: unexpected error {e}")),
        Ok(r) => return Err(format!("Q^2: unexpected witness {:?}", r.witness.vector())),
    }
    Ok(summary.join(", "))
}

struct Golden {
    name: &'static str,
    args: &'static [&'static str],
    exit: i32,
}

const GOLDENS: &[Golden] = &[
    Golden {
        name: "diagonalize_gaussian",
        args: &["diagonalize", "form_gaussian.txt"],
        exit: 0,
    },
    Golden {
        name: "diagonalize_zero",
        args: &["diagonalize", "zero_form.txt"],
        exit: 0,
    },
    Golden {
        name: "isotropic_f9",
        args: &["isotropic", "form_f9_diag11.txt"],
        exit: 0,
    },
    Golden {
        name: "isotropic_f7",
        args: &["isotropic", "form_f7_diag111.txt"],
        exit: 0,
    },
    Golden {
        name: "isotropic_f25_hyperbolic",
        args: &["isotropic", "form_f25_hyperbolic.txt"],
        exit: 0,
    },
    Golden {
        name: "isotropic_q_anisotropic",
        args: &["isotropic", "form_q_sum_squares.txt"],
        exit: 1,
    },
    Golden {
        name: "isotropic_f7_binary_anisotropic",
        args: &["isotropic", "form_f7_diag11.txt"],
        exit: 1,
    },
    Golden {
        name: "norm_solve_f25",
        args: &["norm-solve", "--field", "Fp2:5", "--target", "3"],
        exit: 0,
    },
    Golden {
        name: "norm_solve_gaussian",
        args: &["norm-solve", "--field", "Qsqrt:-1", "--target", "5"],
        exit: 0,
    },
    Golden {
        name: "norm_solve_f7_nonsquare",
        args: &["norm-solve", "--field", "Fp:7", "--target", "3"],
        exit: 1,
    },
    Golden {
        name: "cw_solve_f7_diag",
        args: &["cw-solve", "poly_f7_diag.txt"],
        exit: 0,
    },
    Golden {
        name: "cw_solve_f5_cubic",
        args: &["cw-solve", "poly_f5_cubic.txt"],
        exit: 0,
    },
    Golden {
        name: "cw_solve_f7_binary",
        args: &["cw-solve", "poly_f7_binary.txt"],
        exit: 1,
    },
    Golden {
        name: "rep_close_swap",
        args: &["rep-close", "rep_f7_swap.txt"],
        exit: 0,
    },
    Golden {
        name: "rep_average_cyclic3",
        args: &["rep-average", "rep_f7_cyclic3.txt", "form_f7_diag111.txt"],
        exit: 0,
    },
    Golden {
        name: "rep_decompose_cyclic3",
        args: &["rep-decompose", "rep_f7_cyclic3.txt"],
        exit: 0,
    },
    Golden {
        name: "rep_decompose_swap_seed",
        args: &["rep-decompose", "--seed", "7", "rep_f7_swap.txt"],
        exit: 0,
    },
    Golden {
        name: "rep_decompose_modular",
        args: &["rep-decompose", "rep_f3_cyclic3.txt"],
        exit: 1,
    },
    Golden {
        name: "counterexample_f9",
        args: &["counterexample", "rep_f9_trivial.txt", "form_f9_diag11.txt"],
        exit: 0,
    },
    Golden {
        name: "counterexample_f7",
        args: &[
            "counterexample",
            "rep_f7_trivial3.txt",
            "form_f7_diag111.txt",
        ],
        exit: 0,
    },
    Golden {
        name: "counterexample_q",
        args: &[
            "counterexample",
            "rep_q_trivial.txt",
            "form_q_sum_squares.txt",
        ],
        exit: 1,
    },
    Golden {
        name: "parse_error",
        args: &["diagonalize", "bad_matrix.txt"],
        exit: 2,
    },
    Golden {
        name: "not_hermitian",
        args: &["isotropic", "not_hermitian.txt"],
        exit: 2,
    },
    Golden {
        name: "bad_target",
        args: &["norm-solve", "--field", "Fp:7", "--target", "1+u"],
        exit: 2,
    },
    Golden {
        name: "unknown_flag",
        args: &["isotropic", "--bogus", "form_f9_diag11.txt"],
        exit: 2,
    },
];

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
}

fn invoke(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_isoform"))
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("run isoform");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_goldens() -> Check {
    let bless = std::env::var_os("ISOFORM_BLESS").is_some();
    let golden_dir = data_dir().join("golden");
    for g in GOLDENS {
        let (code, first) = invoke(g.args);
        let (code2, second) = invoke(g.args);
        ensure!(
            code == g.exit,
            "{}: exit {code}, expected {}",
            g.name,
            g.exit
        );
        ensure!(
            code2 == code && first == second,
            "{}: output differs between runs",
            g.name
        );
        let path = golden_dir.join(format!("{}.out", g.name));
        if bless {
            std::fs::create_dir_all(&golden_dir).unwrap();
            std::fs::write(&path, &first).unwrap();
        } else {
            let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            ensure!(first == expected, "{}: output differs from golden", g.name);
        }
        let text = String::from_utf8(first).map_err(|e| e.to_string())?;
        match code {
            0 => ensure!(
                !text.contains("_check = false"),
                "{}: a check failed",
                g.name
            ),
            1 => ensure!(
                text.lines().count() == 1 && text.starts_with("error = "),
                "{}: domain error must be one `error = ` line",
                g.name
            ),
            _ => {}
        }
    }
    Ok(format!("{} invocations, each run twice", GOLDENS.len()))
}
