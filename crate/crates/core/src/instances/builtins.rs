//! The built-in self-similar instances, defined in the spec-file format.

use super::groups::IntegerPowerGroup;
use super::spec_file::parse_power_spec;
use super::zappa_szep::ZappaSzep;

pub const ODOMETER_SPEC: &str = "\
name: odometer
alphabet: 0 1
group: integer-power
z . 0 = 1 | e
z . 1 = 0 | z
";

pub const MODIFIED_ODOMETER_SPEC: &str = "\
name: modified-odometer
alphabet: 0 1 B
group: integer-power
z . 0 = 1 | e
z . 1 = 0 | z
z . B = B | e
";

/// `{0,1}* ⋈ ℤ` with the binary adding machine.
pub fn odometer() -> ZappaSzep<IntegerPowerGroup> {
    parse_power_spec(ODOMETER_SPEC, "odometer").expect("built-in spec is valid")
}

/// `{0,1,B}* ⋈ ℤ`: the odometer with an extra letter fixed with trivial
/// restriction.
pub fn modified_odometer() -> ZappaSzep<IntegerPowerGroup> {
    parse_power_spec(MODIFIED_ODOMETER_SPEC, "modified-odometer").expect("built-in spec is valid")
}
