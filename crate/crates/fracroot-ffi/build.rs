fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();

    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(format!("{crate_dir}/include/fracroot.h"));
        }
        Err(cbindgen::Error::ParseSyntaxError { .. }) => {
            // let rustc report the syntax error instead
        }
        Err(e) => panic!("cbindgen failed: {e}"),
    }

    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
