//! `devolve list-functions` — print the benchmark catalog.

use devolve::error::Result;
use devolve::functions::{catalog, data, FunctionId, FunctionKind};

pub fn execute() -> Result<()> {
    println!("Benchmark functions (search range [-100, 100]^D, optimum value 0):\n");
    for def in catalog() {
        let id = FunctionId::new(def.id)?;
        println!("F{:02}  {}  [{}]  (data: {})", def.id, def.name, def.kind.label(), def.source);
        let kernels: Vec<&str> = def.kernels.iter().map(|k| k.name()).collect();
        println!("     kernels: {}", kernels.join(", "));
        match def.kind {
            FunctionKind::Hybrid => {
                println!("     proportions: {:?}", def.proportions);
            }
            FunctionKind::Composition => {
                println!(
                    "     sigma: {:?}  lambda: {:?}  bias: {:?}",
                    def.sigma, def.lambda, def.bias
                );
            }
            _ => {}
        }
        let files = data::expected_files(id, 50)
            .into_iter()
            .map(|f| f.replace("D50", "D{dim}"))
            .collect::<Vec<_>>();
        println!("     files: {}\n", files.join(", "));
    }
    println!("Budgets: 100000 x D function evaluations (5M at D=50, 10M at D=100);");
    println!("early stop at error <= 1e-8.");
    Ok(())
}
