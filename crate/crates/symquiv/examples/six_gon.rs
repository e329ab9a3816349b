use symquiv::catalog::list_generators;
use symquiv::decomposition::orthogonal_generic;
use symquiv::io::dim_from_labels;
use symquiv::reflections::canonical_tubes;
use symquiv::representations::Flavor;
use symquiv::TameType;

fn main() -> Result<(), symquiv::Error> {
    let (qs, tubes) = canonical_tubes(TameType::parse("A11:0,6")?)?;
    let d = dim_from_labels(&tubes, 0, 2, &[4, 3, 0, 2, 0, 3])?;
    println!("{}", orthogonal_generic(&qs, &tubes, &d)?.render());
    let gens = list_generators(&qs, &tubes, &d, Flavor::Orthogonal)?;
    for g in &gens.generators {
        println!("{} {:?}", g.label, g.kind);
    }
    Ok(())
}
