//! Width-three poset sections: construction from binary codes,
//! classification of crown-stack retracts, and certificate checking.

pub mod corpus;
pub mod dot;
pub mod error;
pub mod level;
pub mod oracle;
pub mod pairtype;
pub mod poset;
pub mod retraction;
pub mod search;
pub mod section;
pub mod split;
pub mod table;
pub mod theo32;
pub mod tower;
pub mod verify;

pub use corpus::{check_fixed_point_equivalence, enumerate_posets, order_ideals, CorpusStats, POSET_COUNTS};
pub use dot::to_dot;
pub use error::{Budget, Error, DEFAULT_BUDGET};
pub use level::{height_width, level_structure, level_structure_on, width_at_most, LevelStructure};
pub use oracle::{
    find_fpf_automorphism, find_stack_retraction, for_each_stack_image,
    has_tower_of_nice_sections_retract, is_minimal_automorphic_small,
    oracle_4crown_stack_retract, oracle_single_4crown_retract,
};
pub use pairtype::{is_automorphic_width3, pair_type, PairType};
pub use poset::{bits, mask_of, Poset, MAX_POINTS};
pub use retraction::{retractable_and_irreducible_points, verify_retraction, Retraction};
pub use section::{
    all_codes, build_section, code_of, conjugate_retraction, extend_level0_permutation, horizon,
    is_nice, is_section, is_two_antichain, section_coordinates, segment, SectionCode,
    SectionCoordinates,
};
pub use search::{
    find_fpf_endomorphism, find_retraction_onto, find_retraction_onto_constrained,
    for_each_retraction_onto, is_isomorphic,
};
pub use split::{
    apply_criteria, assemble_split_retraction, combine_across_gap, normalize_retraction_bottom,
    search_retractive_split, split_method_retract, validate_split, validate_split_detail,
    PruneVerdict, SplitCertificate, SplitKind, SplitSearchOptions,
};
pub use table::{build_segment_table, SegmentTable, TableRow, CLASSIFICATION_FIXTURE};
pub use theo32::{check_theo32, Theo32Decomposition};
pub use verify::{run_suite, CheckResult, SUITES};
pub use tower::{
    has_32_or_23_level_pair, incomparable_pairs, is_crown4_stack, is_stack_image,
    is_tower_of_nice_sections, ordinal_cuts, ordinal_summands, tower_decomposition,
};
