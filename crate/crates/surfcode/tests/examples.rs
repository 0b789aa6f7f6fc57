macro_rules! example {
    ($name:ident, $test:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $test() {
            $name::run_example().expect(stringify!($name));
        }
    };
}

example!(lattice_degeneracy, lattice_degeneracy_runs);
example!(pauli_algebra, pauli_algebra_runs);
example!(ground_spectrum, ground_spectrum_runs);
example!(dispersion, dispersion_runs);
example!(splitting_comparison, splitting_comparison_runs);
example!(effective_chain, effective_chain_runs);
example!(pulse_gates, pulse_gates_runs);
example!(adiabatic_init, adiabatic_init_runs);
example!(tomography, tomography_runs);
example!(decoherence, decoherence_runs);
