def valid(text):
    digits = 0
    for ch in text:
        if ch >= "0" and ch <= "9":
            digits += 1
        elif ch != "." and ch != "-":
            return False
    return digits > 0

def rain():
    amounts = []
    while True:
        line = input()
        if line == "-999":
            break
        if valid(line):
            amount = float(line)
            if amount < 0:
                continue
            amounts.append(amount)
    total = 0
    for amount in amounts:
        total += amount
    if len(amounts) > 0:
        return total / len(amounts)
    return 0

if __name__ == "__main__":
    print(rain())
