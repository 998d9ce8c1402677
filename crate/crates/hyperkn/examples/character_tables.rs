//! The finite group families and their exact character tables.
//!
//! Run with: cargo run --example character_tables

use hyperkn::cli::trig_display;
use hyperkn::groups::{character_table, FiniteGroup, GroupFamily};

fn print_table(family: GroupFamily) {
    let group = FiniteGroup::new(family).unwrap();
    let table = character_table(&group).unwrap();
    table.verify_orthogonality().unwrap();
    println!(
        "{} — order {}, {} classes",
        group.family().label(),
        group.order(),
        table.classes.len()
    );
    print!("{:>8}", "");
    for cls in &table.classes {
        print!(
            "{:>14}",
            format!("[{}]×{}", cls.representative.display(), cls.members.len())
        );
    }
    println!();
    for (irrep, row) in table.irreps.iter().zip(table.values.iter()) {
        print!("{:>8}", irrep.label);
        for v in row {
            print!("{:>14}", trig_display(v));
        }
        println!();
    }
    println!();
}

fn main() {
    // The odd dihedral table: rows (1,1,2), (1,−1,0) transposed over classes.
    print_table(GroupFamily::Dihedral(3));
    // A dicyclic group: x² = yⁿ forces ±i images for odd n.
    print_table(GroupFamily::Dicyclic(3));
    // The U family at even parameter; U(odd) canonicalizes to a dihedral.
    print_table(GroupFamily::U(4));
    let g = FiniteGroup::new(GroupFamily::U(3)).unwrap();
    println!(
        "U(3) canonicalizes to {} (requested {:?})",
        g.family().label(),
        g.requested_family().map(|f| f.label())
    );

    // Class counts follow the closed forms: n+6 when n ≡ 2 (mod 4), n+3
    // when n ≡ 0 (mod 4) for U(n); always n+3 for Dic(n).
    for n in [6u64, 8, 10, 12] {
        let u = FiniteGroup::new(GroupFamily::U(n)).unwrap();
        println!("U({n}): {} classes", u.conjugacy_classes().len());
    }
}
