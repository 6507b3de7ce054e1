//! Co-author, country and coupling graphs, cooperation tables and field
//! analyses.

mod cooperation;
mod field;
mod graph;

pub use cooperation::{
    citing_country_network, classify_collaboration, coauthor_network, collaboration_shares,
    country_copub_network, institution_cooperation_table, CollaborationClass, CollaborationShares,
    CooperationRow, WindowShares,
};
pub use field::{
    bibliographic_coupling, citing_docs_profile, key_actors, reference_set, CitingDocsProfile, KeyActors,
    RankedActor, RankedPublication,
};
pub use graph::{export_graph, parse_graph, Edge, Graph, GraphBuilder, GraphFormat, Node};
