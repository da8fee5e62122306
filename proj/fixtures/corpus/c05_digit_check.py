def is_number(text):
    if len(text) == 0:
        return False
    digits = "0123456789"
    seen_digit = False
    for ch in text:
        ok = False
        for d in digits:
            if ch == d:
                ok = True
                seen_digit = True
        if ch == "." or ch == "-":
            ok = True
        if not ok:
            return False
    return seen_digit

def rain():
    total = 0
    count = 0
    while True:
        line = input()
        if line == "-999":
            break
        if is_number(line):
            value = float(line)
            if value >= 0:
                total += value
                count += 1
    if count > 0:
        return total / count
    return 0

if __name__ == "__main__":
    print(rain())
