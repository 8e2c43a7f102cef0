pub mod catalog;
pub mod exactalg;
pub mod facering;
pub mod koszul;
pub mod simplicial;
pub mod torcohomology;
pub mod toricmorphism;
