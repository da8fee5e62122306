def numeric(text):
    if text == "":
        return False
    start = 0
    if text[0] == "-":
        start = 1
    found = False
    for i in range(start, len(text)):
        ch = text[i]
        if ch < "0" or ch > "9":
            if ch != ".":
                return False
        else:
            found = True
    return found

def rain():
    total = 0
    count = 0
    while True:
        line = input("Rainfall: ")
        if line == "-999":
            break
        if not numeric(line):
            continue
        value = float(line)
        if value < 0:
            continue
        total += value
        count += 1
    if count > 0:
        return total / count
    return 0

if __name__ == "__main__":
    print(rain())
