// Book chapters compiled as doctests so the guide cannot drift from the code.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(introduction, "introduction.md");
chapter!(polyforms, "polyforms.md");
chapter!(complexes, "complexes.md");
chapter!(atiyah, "atiyah.md");
chapter!(cousin, "cousin.md");
chapter!(semireg, "semireg.md");
chapter!(integraldep, "integraldep.md");
chapter!(cli, "cli.md");
