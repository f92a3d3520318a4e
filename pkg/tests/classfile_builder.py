"""Minimal JVM class file assembler used as the test oracle for NBI.

The assembler encodes an explicit instruction list, so the expected
instruction count of every method is known by construction; the parser
under test must recover exactly that count from the produced bytes. The
constant pool layout is fixed: entry 8 is always the Methodref for
java/lang/Object.<init>, the canonical invokespecial target.
"""

import struct

# one-byte opcodes
NOP = b"\x00"
ACONST_NULL = b"\x01"
ICONST_0 = b"\x03"
ICONST_1 = b"\x04"
ICONST_2 = b"\x05"
ALOAD_0 = b"\x2a"
ILOAD_1 = b"\x1b"
IADD = b"\x60"
DUP = b"\x59"
POP = b"\x57"
RETURN = b"\xb1"
IRETURN = b"\xac"
ARETURN = b"\xb0"

OBJECT_INIT_REF = 8  # constant pool index of java/lang/Object.<init>


def bipush(value: int) -> bytes:
    return b"\x10" + struct.pack("b", value)


def sipush(value: int) -> bytes:
    return b"\x11" + struct.pack(">h", value)


def iinc(index: int, delta: int) -> bytes:
    return b"\x84" + bytes([index]) + struct.pack("b", delta)


def wide_iinc(index: int, delta: int) -> bytes:
    return b"\xc4\x84" + struct.pack(">H", index) + struct.pack(">h", delta)


def invokespecial(ref_index: int = OBJECT_INIT_REF) -> bytes:
    return b"\xb7" + struct.pack(">H", ref_index)


def invokestatic(ref_index: int = OBJECT_INIT_REF) -> bytes:
    return b"\xb8" + struct.pack(">H", ref_index)


def goto(offset: int) -> bytes:
    return b"\xa7" + struct.pack(">h", offset)


def tableswitch(low: int, high: int):
    """Offset-dependent encoding: pads to a 4-byte boundary."""

    def encode(at: int) -> bytes:
        pad = (4 - ((at + 1) % 4)) % 4
        jumps = b"".join(struct.pack(">i", 12) for _ in range(high - low + 1))
        return b"\xaa" + b"\x00" * pad + struct.pack(">iii", 16, low, high) + jumps

    return encode


def lookupswitch(keys: list[int]):
    def encode(at: int) -> bytes:
        pad = (4 - ((at + 1) % 4)) % 4
        pairs = b"".join(struct.pack(">ii", key, 12) for key in sorted(keys))
        return b"\xab" + b"\x00" * pad + struct.pack(">ii", 16, len(keys)) + pairs

    return encode


def assemble(instructions: list) -> bytes:
    code = b""
    for instruction in instructions:
        code += instruction(len(code)) if callable(instruction) else instruction
    return code


#: canonical implicit constructor body, exactly as javac emits it
IMPLICIT_CTOR = [ALOAD_0, invokespecial(), RETURN]


def build_class(
    dotted_name: str,
    methods: list[tuple[str, str, list | None]],
    major: int = 52,
) -> bytes:
    """Assemble a class file; a None instruction list means no Code attribute."""
    pool: list[bytes] = []

    def utf8(text: str) -> int:
        data = text.encode("utf-8")
        pool.append(b"\x01" + struct.pack(">H", len(data)) + data)
        return len(pool)

    def clazz(internal: str) -> int:
        index = utf8(internal)
        pool.append(b"\x07" + struct.pack(">H", index))
        return len(pool)

    this_idx = clazz(dotted_name.replace(".", "/"))  # entries 1, 2
    object_idx = clazz("java/lang/Object")  # entries 3, 4
    init_name = utf8("<init>")  # 5
    init_desc = utf8("()V")  # 6
    pool.append(b"\x0c" + struct.pack(">HH", init_name, init_desc))  # 7 NameAndType
    pool.append(b"\x0a" + struct.pack(">HH", object_idx, 7))  # 8 Methodref
    assert len(pool) == OBJECT_INIT_REF
    code_name = utf8("Code")  # 9

    blobs = []
    for method_name, descriptor, instructions in methods:
        name_idx = utf8(method_name)
        desc_idx = utf8(descriptor)
        if instructions is None:
            blobs.append(struct.pack(">HHHH", 0x0401, name_idx, desc_idx, 0))
            continue
        code = assemble(instructions)
        info = struct.pack(">HHI", 8, 8, len(code)) + code + struct.pack(">HH", 0, 0)
        attr = struct.pack(">HI", code_name, len(info)) + info
        blobs.append(struct.pack(">HHHH", 0x0001, name_idx, desc_idx, 1) + attr)

    out = struct.pack(">IHH", 0xCAFEBABE, 0, major)
    out += struct.pack(">H", len(pool) + 1) + b"".join(pool)
    out += struct.pack(">HHH", 0x0021, this_idx, object_idx)
    out += struct.pack(">H", 0)  # interfaces
    out += struct.pack(">H", 0)  # fields
    out += struct.pack(">H", len(blobs)) + b"".join(blobs)
    out += struct.pack(">H", 0)  # class attributes
    return out
