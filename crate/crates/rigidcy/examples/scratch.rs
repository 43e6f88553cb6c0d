//! Temporary pipeline exploration; not part of the crate.

use rigidcy::diffop::*;
use rigidcy::exactalg::{qq, rat, Poly, Rat};

fn lin(c: Rat) -> Poly<Rat> {
    Poly::x_plus(c)
}

fn mh(l: &DiffOp<Rat>, a: Rat) -> DiffOp<Rat> {
    middle_hadamard_op(l, &a).unwrap()
}

fn main() {
    let a = qq(1, 7);
    let b = qq(1, 5);

    // P12: Lambda^2 twisted AFTER the exterior square.
    let inner2 = mh(&make_la(&(a.clone() + qq(1, 4))), qq(1, 4) - a.clone());
    let w1 = twist_power(&inner2, &qq(-1, 2));
    let z = mh(&mh(&w1, b.clone() + qq(3, 4)), qq(3, 4) - b.clone());
    let lam = ext_pow_op(&z, 2);
    println!("lambda^2 scheme:\n{}", riemann_scheme(&lam).unwrap());
    for c in [qq(3, 2), qq(-3, 2)] {
        let q = twist_power(&lam, &c);
        println!("twist {c} scheme:\n{}", riemann_scheme(&q).unwrap());
        match middle_hadamard_op(&q, &qq(3, 2)) {
            Ok(op) => {
                println!(
                    "p12 candidate (twist {c}):\n{}",
                    riemann_scheme(&op).unwrap()
                );
                println!("  op = {op}");
            }
            Err(e) => println!("p12 candidate (twist {c}) error: {e}"),
        }
    }
    // printed closed form at (a,b)
    let aa = a.clone() * a.clone();
    let bb = b.clone() * b.clone();
    let s2 = aa.clone() + bb.clone();
    let p1 = Poly::new(vec![
        qq(48, 1) * s2.clone() + qq(256, 1) * aa.clone() * bb.clone() - rat(39),
        qq(128, 1) * s2.clone() - rat(176),
        qq(128, 1) * s2.clone() - rat(304),
        rat(-256),
        rat(-128),
    ]);
    let p2 = lin(a.clone() + rat(1) - b.clone())
        .mul(&lin(a.clone() + rat(1) + b.clone()))
        .mul(&lin(b.clone() + rat(1) - a.clone()).neg())
        .mul(&lin(rat(1) - a.clone() - b.clone()).neg())
        .scale(&rat(64));
    let printed_p12 = DiffOp::from_layers(vec![Poly::x().pow(4).scale(&rat(64)), p1, p2]).reduce();
    println!(
        "printed p12 scheme:\n{}",
        riemann_scheme(&printed_p12).unwrap()
    );
    println!("printed p12 = {printed_p12}");

    // P21
    let y21 = twist_oneminus(&mh(&make_la(&a), a.clone()), &(a.clone() - rat(1)));
    let p21 = mh(&mh(&y21, b.clone()), rat(1) - b.clone());
    let cb = lin(b.clone()).mul(&lin(rat(1) - b.clone()));
    let printed_p21 = DiffOp::from_layers(vec![
        Poly::x().pow(4),
        cb.mul(&Poly::new(vec![
            a.clone() * a.clone() - a.clone() + rat(1),
            rat(2),
            rat(2),
        ]))
        .neg(),
        cb.mul(&lin(b.clone() + rat(1)))
            .mul(&lin(rat(2) - b.clone())),
    ])
    .reduce();
    println!("p21 matches printed: {}", p21 == printed_p21);
    println!("p21 scheme:\n{}", riemann_scheme(&p21).unwrap());

    // P22
    let x22 = mh(&make_la(&a), b.clone());
    let half = (a.clone() + b.clone() - rat(1)) / rat(2);
    let y22 = twist_oneminus(&x22, &half);
    let w22 = sym_pow_op(&y22, 2);
    println!("sym2 scheme:\n{}", riemann_scheme(&w22).unwrap());
    match middle_hadamard_op(&w22, &qq(1, 2)) {
        Ok(p22) => {
            let q1 = Poly::new(vec![rat(1), rat(2)]);
            let printed_p22 = DiffOp::from_layers(vec![
                Poly::x().pow(4).scale(&rat(4)),
                q1.pow(2)
                    .mul(&Poly::new(vec![
                        rat(2) * a.clone() * b.clone() - a.clone() + rat(1) - b.clone(),
                        rat(1),
                        rat(1),
                    ]))
                    .scale(&rat(-2)),
                Poly::new(vec![rat(3), rat(2)])
                    .mul(&q1)
                    .mul(&lin(b.clone() - rat(1) - a.clone()).reflect())
                    .mul(&lin(b.clone() + rat(1) - a.clone()))
                    .neg(),
            ])
            .reduce();
            println!("p22 matches printed: {}", p22 == printed_p22);
            println!("p22 scheme:\n{}", riemann_scheme(&p22).unwrap());
            println!("p22 = {p22}");
            println!("printed = {printed_p22}");
        }
        Err(e) => println!("p22 error: {e}"),
    }
}
