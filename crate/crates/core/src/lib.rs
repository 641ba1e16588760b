pub mod exactnum;
pub mod abelian;
pub mod gauss;
pub mod triangulation;
pub mod tycat;
pub mod corpus;
pub mod statesum;
