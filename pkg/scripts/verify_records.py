"""Decode every transcribed record, report its status, and list the quarantine with reasons."""
from skolemkit.notation import decode_record, quarantined_records, table_records


def main():
    recs = table_records()
    ok = 0
    for rec in recs:
        dec = decode_record(rec)
        ok += dec.ok
        status = "ok" if dec.ok else f"FAIL common={dec.common} {dec.report1} / {dec.report2}"
        print(f"n={rec.n:<3} {rec.family:<18} p={rec.p:<3} {status}")
    quarantine = quarantined_records()
    print(f"\n{ok}/{len(recs)} records ok")
    print(f"{len(quarantine)} quarantined ({len(quarantine) / (len(recs) + len(quarantine)):.1%} of corpus):")
    for rec, reason in quarantine:
        print(f"  n={rec.n:<3} {rec.family:<18} p={rec.p:<3} {reason}")


if __name__ == "__main__":
    main()
