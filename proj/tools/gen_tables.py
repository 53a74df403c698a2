#!/usr/bin/env python3
"""Generates src/char_tables.inc: the byte classification tables used by the
scanners and the percent-encode sets.

The code point lists below are a snapshot of the WHATWG URL Standard as
exercised by web-platform-tests commit befe66343e5f21dc464c8c772c6d20695936714f
(the revision of tests/data/urltestdata.json). Re-run after editing:

    python3 tools/gen_tables.py > src/char_tables.inc
"""

C0_CONTROLS = set(range(0x00, 0x20))
NON_ASCII = set(range(0x7F, 0x100))  # everything above U+007E, DEL included

C0_CONTROL_SET = C0_CONTROLS | NON_ASCII
FRAGMENT_SET = C0_CONTROL_SET | {ord(c) for c in ' "<>`'}
QUERY_SET = C0_CONTROL_SET | {ord(c) for c in ' "#<>'}
SPECIAL_QUERY_SET = QUERY_SET | {ord("'")}
PATH_SET = QUERY_SET | {ord(c) for c in '?`{}'}
USERINFO_SET = PATH_SET | {ord(c) for c in '/:;=@[\\]^|'}
COMPONENT_SET = USERINFO_SET | {ord(c) for c in '$%&+,'}

FORBIDDEN_HOST = {0x00, 0x09, 0x0A, 0x0D} | {ord(c) for c in ' #/:<>?@[\\]^|'}
FORBIDDEN_DOMAIN = FORBIDDEN_HOST | C0_CONTROLS | {ord('%'), 0x7F}


def bitmap(members):
    words = [0, 0, 0, 0]
    for b in members:
        words[b >> 6] |= 1 << (b & 63)
    return "{{" + ", ".join("0x%016xULL" % w for w in words) + "}}"


def byte_table(name, fn):
    values = [fn(b) for b in range(256)]
    lines = []
    for row in range(0, 256, 16):
        lines.append("    " + ", ".join(str(v) for v in values[row:row + 16]) + ",")
    return "inline constexpr std::array<uint8_t, 256> %s = {{\n%s\n}};\n" % (name, "\n".join(lines))


def host_class(b):
    code = 0
    if b in FORBIDDEN_DOMAIN or b >= 0x80:
        code |= 1
    if ord('A') <= b <= ord('Z'):
        code |= 2
    return code


def path_class(b):
    code = 0
    if b in PATH_SET:
        code |= 1
    if b == ord('\\'):
        code |= 2
    if b == ord('.'):
        code |= 4
    if b == ord('%'):
        code |= 8
    return code


def main():
    out = []
    out.append("// Generated by tools/gen_tables.py. Do not edit.\n")
    out.append("// clang-format off\n")
    out.append("namespace urlkit::tables {\n")
    for name, members in [
        ("kC0ControlBits", C0_CONTROL_SET),
        ("kFragmentBits", FRAGMENT_SET),
        ("kQueryBits", QUERY_SET),
        ("kSpecialQueryBits", SPECIAL_QUERY_SET),
        ("kPathBits", PATH_SET),
        ("kUserinfoBits", USERINFO_SET),
        ("kComponentBits", COMPONENT_SET),
        ("kForbiddenHostBits", FORBIDDEN_HOST),
        ("kForbiddenDomainBits", FORBIDDEN_DOMAIN),
    ]:
        out.append("inline constexpr std::array<uint64_t, 4> %s = %s;\n" % (name, bitmap(members)))
    out.append("\n// 1 = forbidden domain code point or non-ASCII, 2 = ASCII upper case.\n")
    out.append(byte_table("kHostClass", host_class))
    out.append("\n// 1 = path percent-encode set, 2 = backslash, 4 = dot, 8 = percent.\n")
    out.append(byte_table("kPathClass", path_class))
    out.append("\n}  // namespace urlkit::tables\n")
    print("".join(out), end="")


if __name__ == "__main__":
    main()
